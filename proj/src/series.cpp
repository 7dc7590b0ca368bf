#include "germforge/series.hpp"

#include <algorithm>

#include "germforge/error.hpp"

namespace germforge {

int mul_precision(int a, int b) {
  long long p = static_cast<long long>(a) * static_cast<long long>(b);
  return p > INT_MAX / 4 ? INT_MAX / 4 : static_cast<int>(p);
}

TruncSeries::TruncSeries(std::size_t nvars, int precision) : nvars_(nvars), precision_(precision) {
  if (precision < 0) fail(ErrorKind::precision, "negative precision");
}

TruncSeries TruncSeries::constant(std::size_t nvars, int precision, const Coef& c) {
  TruncSeries s(nvars, precision);
  s.add_term(Multidegree(nvars), c);
  return s;
}

TruncSeries TruncSeries::variable(std::size_t nvars, int precision, std::size_t i) {
  if (i >= nvars) fail(ErrorKind::dimension, "variable index out of range");
  return monomial(nvars, precision, Multidegree::unit(nvars, i));
}

TruncSeries TruncSeries::monomial(std::size_t nvars, int precision, const Multidegree& j,
                                  const Coef& c) {
  TruncSeries s(nvars, precision);
  s.add_term(j, c);
  return s;
}

Coef TruncSeries::coeff(const Multidegree& j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? Coef() : it->second;
}

void TruncSeries::add_term(const Multidegree& j, const Coef& c) {
  if (j.size() != nvars_) fail(ErrorKind::dimension, "monomial has wrong number of variables");
  if (j.total() > precision_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TruncSeries::set_term(const Multidegree& j, const Coef& c) {
  if (j.size() != nvars_) fail(ErrorKind::dimension, "monomial has wrong number of variables");
  if (j.total() > precision_) return;
  if (c.is_zero()) {
    terms_.erase(j);
  } else {
    terms_[j] = c;
  }
}

Coef TruncSeries::constant_term() const { return coeff(Multidegree(nvars_)); }

std::optional<int> TruncSeries::order() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.total();
}

int TruncSeries::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.total();
}

TruncSeries TruncSeries::jet(int k) const {
  if (k > precision_) {
    fail(ErrorKind::precision, "jet of order " + std::to_string(k) +
                                   " requested from a series known to order " +
                                   std::to_string(precision_));
  }
  return truncated(k);
}

TruncSeries TruncSeries::truncated(int k) const {
  TruncSeries r(nvars_, std::max(0, std::min(k, precision_)));
  for (const auto& [j, c] : terms_) {
    if (j.total() > r.precision_) break;
    r.terms_.emplace_hint(r.terms_.end(), j, c);
  }
  return r;
}

namespace {

void check_same(const TruncSeries& a, const TruncSeries& b) {
  if (a.nvars() != b.nvars()) {
    fail(ErrorKind::dimension, "series in " + std::to_string(a.nvars()) + " and " +
                                   std::to_string(b.nvars()) + " variables");
  }
}

}  // namespace

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  check_same(*this, o);
  if (o.precision_ < precision_) *this = truncated(o.precision_);
  for (const auto& [j, c] : o.terms_) add_term(j, c);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  check_same(*this, o);
  if (o.precision_ < precision_) *this = truncated(o.precision_);
  for (const auto& [j, c] : o.terms_) add_term(j, -c);
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Coef& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [j, v] : terms_) v *= c;
  return *this;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r = *this;
  for (auto& [j, v] : r.terms_) v = -v;
  return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  check_same(a, b);
  TruncSeries r(a.nvars_, std::min(a.precision_, b.precision_));
  for (const auto& [ja, ca] : a.terms_) {
    if (ja.total() > r.precision_) break;
    for (const auto& [jb, cb] : b.terms_) {
      if (ja.total() + jb.total() > r.precision_) break;
      r.add_term(ja + jb, ca * cb);
    }
  }
  return r;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  return a.nvars_ == b.nvars_ && a.precision_ == b.precision_ && a.terms_ == b.terms_;
}

TruncSeries TruncSeries::inverse() const {
  Coef c0 = constant_term();
  if (c0.is_zero()) fail(ErrorKind::invalid_input, "series without constant term is not a unit");
  Coef c0inv = c0.inverse();
  // 1/s = c0^{-1} * sum_k m^k with m = 1 - s/c0 of order >= 1.
  TruncSeries m = constant(nvars_, precision_, Coef(1)) - (*this) * c0inv;
  TruncSeries sum = constant(nvars_, precision_, Coef(1));
  TruncSeries power = sum;
  for (int k = 1; k <= precision_; ++k) {
    power = power * m;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * c0inv;
}

TruncSeries TruncSeries::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  TruncSeries result = constant(nvars_, precision_, Coef(1));
  TruncSeries base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

TruncSeries TruncSeries::conj() const {
  TruncSeries r = *this;
  for (auto& [j, v] : r.terms_) v = v.conj();
  return r;
}

bool agree_to(const TruncSeries& a, const TruncSeries& b, int k) {
  check_same(a, b);
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  auto skip_end = [k](auto it, auto end) { return it == end || it->first.total() > k; };
  while (true) {
    bool ea = skip_end(ia, a.terms().end());
    bool eb = skip_end(ib, b.terms().end());
    if (ea || eb) return ea && eb;
    if (!(ia->first == ib->first) || ia->second != ib->second) return false;
    ++ia;
    ++ib;
  }
}

TruncSeries compose(const TruncSeries& s, const std::vector<TruncSeries>& subs) {
  if (subs.size() != s.nvars()) fail(ErrorKind::dimension, "substitution count mismatch");
  if (subs.empty()) return s;
  std::size_t m = subs.front().nvars();
  int nu = INT_MAX / 4;
  int psub = INT_MAX / 4;
  for (const auto& g : subs) {
    if (g.nvars() != m) fail(ErrorKind::dimension, "substitutes live in different rings");
    if (!g.constant_term().is_zero()) {
      fail(ErrorKind::invalid_input, "substitute does not vanish at the origin");
    }
    nu = std::min(nu, g.order().value_or(g.precision() + 1));
    psub = std::min(psub, g.precision());
  }
  int prec = std::min(mul_precision(s.precision(), nu), psub);
  TruncSeries out(m, prec);
  std::map<Multidegree, TruncSeries> cache;
  cache.emplace(Multidegree(s.nvars()), TruncSeries::constant(m, prec, Coef(1)));
  // Monomial values built from the next-lower monomial in graded order.
  auto value = [&](auto&& self, const Multidegree& j) -> const TruncSeries& {
    auto it = cache.find(j);
    if (it != cache.end()) return it->second;
    std::size_t i = j.size();
    while (j[i - 1] == 0) --i;
    Multidegree lower = j - Multidegree::unit(j.size(), i - 1);
    TruncSeries v = self(self, lower) * subs[i - 1].truncated(prec);
    return cache.emplace(j, std::move(v)).first->second;
  };
  for (const auto& [j, c] : s.terms()) {
    if (mul_precision(j.total(), nu) > prec) break;
    out += value(value, j) * c;
  }
  return out;
}

TruncSeries embed(const TruncSeries& s, std::size_t nvars, const std::vector<std::size_t>& map) {
  if (map.size() != s.nvars()) fail(ErrorKind::dimension, "embedding map has wrong length");
  TruncSeries r(nvars, s.precision());
  for (const auto& [j, c] : s.terms()) {
    Multidegree k(nvars);
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (map[i] >= nvars) fail(ErrorKind::dimension, "embedding target out of range");
      k.set(map[i], k[map[i]] + j[i]);
    }
    r.add_term(k, c);
  }
  return r;
}

}  // namespace germforge
