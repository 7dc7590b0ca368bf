#include "germforge/curve.hpp"

#include <algorithm>
#include <map>

#include "germforge/error.hpp"

namespace germforge {

UniSeries::UniSeries(int precision) {
  if (precision < 0) fail(ErrorKind::precision, "negative precision");
  c_.assign(static_cast<std::size_t>(precision) + 1, Coef());
}

UniSeries::UniSeries(std::vector<Coef> coeffs, int precision) : UniSeries(precision) {
  for (std::size_t m = 0; m < coeffs.size() && m < c_.size(); ++m) c_[m] = std::move(coeffs[m]);
}

UniSeries UniSeries::monomial(int precision, int e, const Coef& c) {
  UniSeries s(precision);
  if (e <= precision) s[e] = c;
  return s;
}

std::optional<int> UniSeries::order() const {
  for (std::size_t m = 0; m < c_.size(); ++m) {
    if (!c_[m].is_zero()) return static_cast<int>(m);
  }
  return std::nullopt;
}

UniSeries UniSeries::truncated(int k) const {
  UniSeries r(std::max(0, std::min(k, precision())));
  for (int m = 0; m <= r.precision(); ++m) r[m] = (*this)[m];
  return r;
}

UniSeries& UniSeries::operator+=(const UniSeries& o) {
  if (o.precision() < precision()) *this = truncated(o.precision());
  for (int m = 0; m <= precision(); ++m) c_[m] += o[m];
  return *this;
}

UniSeries& UniSeries::operator-=(const UniSeries& o) {
  if (o.precision() < precision()) *this = truncated(o.precision());
  for (int m = 0; m <= precision(); ++m) c_[m] -= o[m];
  return *this;
}

UniSeries& UniSeries::operator*=(const Coef& c) {
  for (auto& v : c_) v *= c;
  return *this;
}

UniSeries operator*(const UniSeries& a, const UniSeries& b) {
  int p = std::min(a.precision(), b.precision());
  UniSeries r(p);
  for (int i = 0; i <= p; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= p; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

UniSeries UniSeries::pow(int e) const {
  if (e < 0) fail(ErrorKind::invalid_input, "negative power of a series");
  UniSeries result = monomial(precision(), 0);
  UniSeries base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

UniSeries divide(const UniSeries& a, const UniSeries& b) {
  auto sb = b.order();
  if (!sb) fail(ErrorKind::invalid_input, "division by a series that vanishes to its precision");
  int s = *sb;
  auto sa = a.order();
  if (sa && *sa < s) {
    fail(ErrorKind::invalid_input, "quotient is not a power series: numerator order " +
                                       std::to_string(*sa) + " < denominator order " +
                                       std::to_string(s));
  }
  int p = std::min(a.precision(), b.precision()) - s;
  if (p < 0) fail(ErrorKind::precision, "not enough precision for series division");
  UniSeries q(p);
  Coef lead_inv = b[s].inverse();
  for (int m = 0; m <= p; ++m) {
    Coef acc = a[m + s];
    for (int i = 1; i <= m; ++i) {
      if (!b[s + i].is_zero() && !q[m - i].is_zero()) acc -= b[s + i] * q[m - i];
    }
    q[m] = acc * lead_inv;
  }
  return q;
}

TruncSeries UniSeries::to_trunc() const {
  TruncSeries s(1, precision());
  for (int m = 0; m <= precision(); ++m) s.add_term(Multidegree{m}, (*this)[m]);
  return s;
}

UniSeries UniSeries::from_trunc(const TruncSeries& s) {
  if (s.nvars() != 1) fail(ErrorKind::dimension, "expected a univariate series");
  UniSeries u(s.precision());
  for (const auto& [j, c] : s.terms()) u[j[0]] = c;
  return u;
}

FormalCurve::FormalCurve(std::vector<UniSeries> components) : comps_(std::move(components)) {
  for (const auto& c : comps_) {
    if (!c[0].is_zero()) fail(ErrorKind::invalid_input, "curve component does not vanish at t = 0");
  }
}

int FormalCurve::precision() const {
  int p = INT_MAX / 4;
  for (const auto& c : comps_) p = std::min(p, c.precision());
  return comps_.empty() ? 0 : p;
}

Order vanishing_order(const FormalCurve& zeta) {
  std::optional<int> best;
  for (const auto& c : zeta.components()) {
    auto o = c.order();
    if (o && (!best || *o < *best)) best = o;
  }
  if (best) return {*best, false};
  return {zeta.precision() + 1, true};
}

UniSeries pullback(const TruncSeries& s, const FormalCurve& zeta, std::optional<int> max_degree) {
  if (s.nvars() != zeta.dim()) {
    fail(ErrorKind::dimension, "series in " + std::to_string(s.nvars()) +
                                   " variables pulled back along a curve in dimension " +
                                   std::to_string(zeta.dim()));
  }
  Order nu = vanishing_order(zeta);
  if (nu.lower_bound) fail(ErrorKind::constant_curve, "curve vanishes identically to its precision");
  int prec = std::min(mul_precision(s.precision(), nu.value), zeta.precision());
  if (max_degree) prec = std::min(prec, std::max(0, *max_degree));

  std::vector<UniSeries> comps;
  comps.reserve(zeta.dim());
  for (const auto& c : zeta.components()) comps.push_back(c.truncated(prec));

  std::map<Multidegree, UniSeries> cache;
  cache.emplace(Multidegree(s.nvars()), UniSeries::monomial(prec, 0));
  auto value = [&](auto&& self, const Multidegree& j) -> const UniSeries& {
    auto it = cache.find(j);
    if (it != cache.end()) return it->second;
    std::size_t i = j.size();
    while (j[i - 1] == 0) --i;
    Multidegree lower = j - Multidegree::unit(j.size(), i - 1);
    UniSeries v = self(self, lower) * comps[i - 1];
    return cache.emplace(j, std::move(v)).first->second;
  };

  UniSeries out(prec);
  for (const auto& [j, c] : s.terms()) {
    if (mul_precision(j.total(), nu.value) > prec) break;
    out += value(value, j) * c;
  }
  return out;
}

FormalCurve reparametrize(const FormalCurve& zeta, int m) {
  if (m <= 0) fail(ErrorKind::invalid_input, "reparametrization exponent must be positive");
  std::vector<UniSeries> comps;
  for (const auto& c : zeta.components()) {
    UniSeries r(mul_precision(c.precision(), m));
    for (int k = 0; k <= c.precision(); ++k) r[k * m] = c[k];
    comps.push_back(std::move(r));
  }
  return FormalCurve(std::move(comps));
}

}  // namespace germforge
