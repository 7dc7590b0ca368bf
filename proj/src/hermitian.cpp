#include "germforge/hermitian.hpp"

#include <algorithm>
#include <map>

#include "germforge/error.hpp"

namespace germforge {

Multidegree pair_index(const Multidegree& j, const Multidegree& k) {
  if (j.size() != k.size()) fail(ErrorKind::dimension, "holomorphic and antiholomorphic degree lengths differ");
  std::vector<int> e(j.exponents());
  e.insert(e.end(), k.exponents().begin(), k.exponents().end());
  return Multidegree(std::move(e));
}

std::pair<Multidegree, Multidegree> split_index(const Multidegree& jk) {
  const auto& e = jk.exponents();
  std::size_t n = e.size() / 2;
  return {Multidegree(std::vector<int>(e.begin(), e.begin() + static_cast<long>(n))),
          Multidegree(std::vector<int>(e.begin() + static_cast<long>(n), e.end()))};
}

HermitianForm::HermitianForm(std::size_t nvars, int precision)
    : n_(nvars), s_(2 * nvars, precision) {}

HermitianForm HermitianForm::from_series(std::size_t nvars, TruncSeries s) {
  if (s.nvars() != 2 * nvars) fail(ErrorKind::dimension, "hermitian form needs 2n variables");
  HermitianForm r;
  r.n_ = nvars;
  r.s_ = std::move(s);
  r.check_reality();
  return r;
}

Coef HermitianForm::coeff(const Multidegree& j, const Multidegree& k) const {
  return s_.coeff(pair_index(j, k));
}

void HermitianForm::add_real_term(const Multidegree& j, const Multidegree& k, const Coef& c) {
  if (j == k) {
    if (!c.is_real()) {
      fail(ErrorKind::reality, "diagonal coefficient at " + to_string(j) + " is not real");
    }
    s_.add_term(pair_index(j, k), c);
    return;
  }
  s_.add_term(pair_index(j, k), c);
  s_.add_term(pair_index(k, j), c.conj());
}

HermitianForm HermitianForm::jet(int k) const {
  HermitianForm r;
  r.n_ = n_;
  r.s_ = s_.jet(k);
  return r;
}

void HermitianForm::check_reality() const {
  for (const auto& [jk, c] : s_.terms()) {
    auto [j, k] = split_index(jk);
    Coef partner = s_.coeff(pair_index(k, j));
    if (partner != c.conj()) {
      fail(ErrorKind::reality, "coefficient of z^" + to_string(j) + " zbar^" + to_string(k) +
                                   " is " + to_string(c) + " but its conjugate partner is " +
                                   to_string(partner));
    }
  }
}

HermitianForm operator+(const HermitianForm& a, const HermitianForm& b) {
  if (a.n_ != b.n_) fail(ErrorKind::dimension, "hermitian forms in different dimensions");
  HermitianForm r;
  r.n_ = a.n_;
  r.s_ = a.s_ + b.s_;
  return r;
}

HermitianForm operator-(const HermitianForm& a, const HermitianForm& b) {
  if (a.n_ != b.n_) fail(ErrorKind::dimension, "hermitian forms in different dimensions");
  HermitianForm r;
  r.n_ = a.n_;
  r.s_ = a.s_ - b.s_;
  return r;
}

TruncSeries holomorphic_lift(const TruncSeries& f) {
  std::vector<std::size_t> map(f.nvars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  return embed(f, 2 * f.nvars(), map);
}

TruncSeries antiholomorphic_lift(const TruncSeries& f) {
  std::vector<std::size_t> map(f.nvars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = f.nvars() + i;
  return embed(f.conj(), 2 * f.nvars(), map);
}

HermitianForm abs_squared(const TruncSeries& f) {
  return HermitianForm::from_series(f.nvars(), holomorphic_lift(f) * antiholomorphic_lift(f));
}

HermitianForm two_re(const TruncSeries& h) {
  return HermitianForm::from_series(h.nvars(), holomorphic_lift(h) + antiholomorphic_lift(h));
}

Decomposition decompose(const HermitianForm& r, int k) {
  r.check_reality();
  HermitianForm rk = r.jet(k);
  const std::size_t n = r.nvars();
  Decomposition d;
  d.nvars = n;
  d.precision = k;
  d.h = TruncSeries(n, k);

  const Multidegree zero(n);
  std::map<Multidegree, TruncSeries> conj_a;  // J -> sum_K conj(a_JK) z^K
  for (const auto& [jk, c] : rk.series().terms()) {
    auto [j, kk] = split_index(jk);
    if (kk.is_zero()) {
      // Pure holomorphic content, including the constant with 2 Re h(0) = c.
      d.h.add_term(j, j.is_zero() ? c * Coef(Rational(1, 2)) : c);
      continue;
    }
    if (j.is_zero() || kk < j) continue;  // conjugate partners of stored pairs
    Coef a;
    if (j == kk) {
      if (!c.is_real()) fail(ErrorKind::reality, "diagonal coefficient at " + to_string(j) + " is not real");
      a = c * Coef(Rational(1, 4));
    } else {
      a = c * Coef(Rational(1, 2));
    }
    auto it = conj_a.try_emplace(j, TruncSeries(n, k)).first;
    it->second.add_term(kk, a.conj());
  }

  for (auto& [j, c] : conj_a) {
    if (c.is_zero()) continue;
    TruncSeries zj = TruncSeries::monomial(n, k, j);
    d.families.push_back(Family{j, zj + c, zj - c});
  }
  return d;
}

HermitianForm reconstruct(const Decomposition& d, int k) {
  if (k > d.precision) {
    fail(ErrorKind::precision, "reconstruction at order " + std::to_string(k) +
                                   " exceeds decomposition precision " + std::to_string(d.precision));
  }
  HermitianForm r = two_re(d.h.truncated(k));
  for (const auto& fam : d.families) {
    r = r + abs_squared(fam.f.truncated(k)) - abs_squared(fam.g.truncated(k));
  }
  return r.jet(std::min(k, r.precision()));
}

TruncSeries pullback(const HermitianForm& r, const FormalCurve& zeta, std::optional<int> max_degree) {
  if (r.nvars() != zeta.dim()) {
    fail(ErrorKind::dimension, "form in " + std::to_string(r.nvars()) +
                                   " variables pulled back along a curve in dimension " +
                                   std::to_string(zeta.dim()));
  }
  Order nu = vanishing_order(zeta);
  if (nu.lower_bound) fail(ErrorKind::constant_curve, "curve vanishes identically to its precision");
  int prec = std::min(mul_precision(r.precision(), nu.value), zeta.precision());
  if (max_degree) prec = std::min(prec, std::max(0, *max_degree));

  const std::size_t n = r.nvars();
  std::vector<UniSeries> comps;
  for (const auto& c : zeta.components()) comps.push_back(c.truncated(prec));
  std::map<Multidegree, UniSeries> cache;
  cache.emplace(Multidegree(n), UniSeries::monomial(prec, 0));
  auto value = [&](auto&& self, const Multidegree& j) -> const UniSeries& {
    auto it = cache.find(j);
    if (it != cache.end()) return it->second;
    std::size_t i = j.size();
    while (j[i - 1] == 0) --i;
    UniSeries v = self(self, j - Multidegree::unit(n, i - 1)) * comps[i - 1];
    return cache.emplace(j, std::move(v)).first->second;
  };

  TruncSeries out(2, prec);
  for (const auto& [jk, c] : r.series().terms()) {
    auto [j, k] = split_index(jk);
    if (mul_precision(j.total() + k.total(), nu.value) > prec) break;
    const UniSeries& a = value(value, j);
    const UniSeries& b = value(value, k);
    for (int p = 0; p <= prec; ++p) {
      if (a[p].is_zero()) continue;
      Coef ca = c * a[p];
      for (int q = 0; p + q <= prec; ++q) {
        if (b[q].is_zero()) continue;
        out.add_term(Multidegree{p, q}, ca * b[q].conj());
      }
    }
  }
  return out;
}

}  // namespace germforge
