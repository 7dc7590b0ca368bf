#pragma once

// Reference implementations used as oracles. They work on plain exponent
// maps and dense matrices and share no code with the library kernels.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "germforge/coef.hpp"
#include "germforge/curve.hpp"
#include "germforge/hermitian.hpp"
#include "germforge/series.hpp"

namespace oracle {

using germforge::Coef;
using germforge::Rational;
using Exps = std::vector<int>;
using Poly = std::map<Exps, Coef>;
using Uni = std::vector<Coef>;  // index = power of t

inline int degree_of(const Exps& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

inline void accumulate(Poly& p, const Exps& e, const Coef& c) {
  Coef& slot = p[e];
  slot += c;
  if (slot.is_zero()) p.erase(e);
}

inline Poly from_series(const germforge::TruncSeries& s) {
  Poly p;
  for (const auto& [m, c] : s.terms()) p[m.exponents()] = c;
  return p;
}

inline germforge::TruncSeries to_series(const Poly& p, std::size_t n, int precision) {
  germforge::TruncSeries s(n, precision);
  for (const auto& [e, c] : p) s.add_term(germforge::Multidegree(e), c);
  return s;
}

/// Schoolbook product keeping total degree <= maxdeg.
inline Poly mul(const Poly& a, const Poly& b, int maxdeg) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      if (degree_of(e) > maxdeg) continue;
      accumulate(out, e, ca * cb);
    }
  }
  return out;
}

inline Poly add(Poly a, const Poly& b, const Coef& scale = Coef(1)) {
  for (const auto& [e, c] : b) accumulate(a, e, c * scale);
  return a;
}

inline Poly truncate(const Poly& p, int maxdeg) {
  Poly out;
  for (const auto& [e, c] : p) {
    if (degree_of(e) <= maxdeg) out[e] = c;
  }
  return out;
}

inline Uni uni_mul(const Uni& a, const Uni& b, int maxdeg) {
  Uni out(static_cast<std::size_t>(maxdeg) + 1);
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= maxdeg; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= maxdeg; ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

inline Uni uni_pow(const Uni& a, int e, int maxdeg) {
  Uni out(static_cast<std::size_t>(maxdeg) + 1);
  out[0] = Coef(1);
  for (int k = 0; k < e; ++k) out = uni_mul(out, a, maxdeg);
  return out;
}

inline Uni curve_component(const germforge::FormalCurve& z, std::size_t i) {
  return z[i].coeffs();
}

/// s(z(t)) through t^maxdeg by expanding each monomial separately.
inline Uni compose_uni(const Poly& s, const std::vector<Uni>& comps, int maxdeg) {
  Uni out(static_cast<std::size_t>(maxdeg) + 1);
  for (const auto& [e, c] : s) {
    Uni term(static_cast<std::size_t>(maxdeg) + 1);
    term[0] = c;
    for (std::size_t i = 0; i < e.size(); ++i) term = uni_mul(term, uni_pow(comps[i], e[i], maxdeg), maxdeg);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += term[k];
  }
  return out;
}

/// r(z(t), conj z(t)) as a map (a, b) -> coefficient of t^a tbar^b with a + b <= maxdeg.
inline Poly hermitian_pullback(const Poly& r, std::size_t n, const std::vector<Uni>& comps, int maxdeg) {
  std::vector<Poly> zt(n), zbar(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < comps[i].size(); ++k) {
      if (comps[i][k].is_zero()) continue;
      zt[i][{static_cast<int>(k), 0}] = comps[i][k];
      zbar[i][{0, static_cast<int>(k)}] = comps[i][k].conj();
    }
  }
  Poly out;
  for (const auto& [e, c] : r) {
    Poly term{{{0, 0}, c}};
    for (std::size_t i = 0; i < n; ++i) {
      for (int k = 0; k < e[i]; ++k) term = mul(term, zt[i], maxdeg);
      for (int k = 0; k < e[n + i]; ++k) term = mul(term, zbar[i], maxdeg);
    }
    out = add(out, term);
  }
  return out;
}

/// Rank of a dense matrix over the Gaussian rationals.
inline std::size_t rank(std::vector<std::vector<Coef>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    Coef inv = rows[r][c].inverse();
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      Coef f = rows[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

inline std::vector<Exps> monomials_below(std::size_t n, int k) {
  std::vector<Exps> out;
  Exps e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
    e[i] = 0;
  };
  rec(rec, 0, k - 1);
  return out;
}

/// dim O / (I + M_0^k) by dense elimination on the span of m * g_i, deg < k.
inline long quotient_dim(const std::vector<Poly>& gens, std::size_t n, int k) {
  std::vector<Exps> cols = monomials_below(n, k);
  std::map<Exps, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;
  std::vector<std::vector<Coef>> rows;
  for (const auto& g : gens) {
    for (const auto& m : cols) {
      std::vector<Coef> row(cols.size());
      bool any = false;
      for (const auto& [e, c] : g) {
        Exps s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = e[i] + m[i];
        auto it = index.find(s);
        if (it == index.end()) continue;
        row[it->second] += c;
        any = true;
      }
      if (any) rows.push_back(std::move(row));
    }
  }
  return static_cast<long>(cols.size() - rank(std::move(rows)));
}

/// Monomials of degree < k divisible by no generator exponent.
inline long standard_monomials(const std::vector<Exps>& gens, std::size_t n, int k) {
  long count = 0;
  for (const auto& m : monomials_below(n, k)) {
    bool in_ideal = false;
    for (const auto& g : gens) {
      bool div = true;
      for (std::size_t i = 0; i < n; ++i) div = div && g[i] <= m[i];
      in_ideal = in_ideal || div;
    }
    if (!in_ideal) ++count;
  }
  return count;
}

/// Hand-rolled generators on top of a seeded engine.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
  bool coin() { return uniform(0, 1) == 1; }
  Rational rational(int maxnum = 5, int maxden = 4) {
    int num = uniform(-maxnum, maxnum);
    int den = uniform(1, maxden);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational nonzero_rational(int maxnum = 5, int maxden = 4) {
    Rational q = 0;
    while (q == 0) q = rational(maxnum, maxden);
    return q;
  }
  Coef gaussian(int maxnum = 5, int maxden = 4) { return Coef(rational(maxnum, maxden), rational(maxnum, maxden)); }
  Coef nonzero_gaussian() {
    Coef c;
    while (c.is_zero()) c = gaussian();
    return c;
  }
  Exps exponents(std::size_t n, int maxdeg) {
    Exps e(n, 0);
    int budget = uniform(0, maxdeg);
    for (int k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))];
    return e;
  }
};

/// Random real-valued polynomial in (z, zbar): terms c z^J zbar^K with their
/// conjugate partners, |J| + |K| <= maxdeg.
inline germforge::HermitianForm random_real_form(Rng& rng, std::size_t n, int maxdeg, int nterms, int precision) {
  germforge::HermitianForm r(n, precision);
  for (int i = 0; i < nterms; ++i) {
    int dj = rng.uniform(0, maxdeg);
    Exps j = rng.exponents(n, dj);
    Exps k = rng.exponents(n, maxdeg - degree_of(j));
    Coef c = j == k ? Coef(rng.nonzero_rational()) : rng.nonzero_gaussian();
    r.add_real_term(germforge::Multidegree(j), germforge::Multidegree(k), c);
  }
  return r;
}

/// Random polynomial curve with zero constant term.
inline germforge::FormalCurve random_curve(Rng& rng, std::size_t n, int maxdeg, int precision) {
  std::vector<germforge::UniSeries> comps;
  for (std::size_t i = 0; i < n; ++i) {
    germforge::UniSeries u(precision);
    int terms = rng.uniform(0, 2);
    for (int k = 0; k < terms; ++k) u[rng.uniform(1, maxdeg)] += Coef(rng.nonzero_rational(3, 2));
    comps.push_back(std::move(u));
  }
  if (germforge::vanishing_order(germforge::FormalCurve(comps)).lower_bound) comps[0][1] = Coef(1);
  return germforge::FormalCurve(std::move(comps));
}

/// Gauss-Jordan inverse of a square matrix over the Gaussian rationals.
inline std::vector<std::vector<Coef>> inverse(std::vector<std::vector<Coef>> a) {
  const std::size_t k = a.size();
  std::vector<std::vector<Coef>> inv(k, std::vector<Coef>(k));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = Coef(1);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (a[p][c].is_zero()) ++p;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Coef s = a[c][c].inverse();
    for (std::size_t j = 0; j < k; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      Coef f = a[i][c];
      for (std::size_t j = 0; j < k; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline std::vector<std::vector<Coef>> matmul(const std::vector<std::vector<Coef>>& a,
                                             const std::vector<std::vector<Coef>>& b) {
  std::vector<std::vector<Coef>> out(a.size(), std::vector<Coef>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

/// Exact rational unitary (I - A)(I + A)^{-1} from a random skew-Hermitian A.
inline std::vector<std::vector<Coef>> cayley_unitary(Rng& rng, std::size_t k) {
  std::vector<std::vector<Coef>> a(k, std::vector<Coef>(k));
  for (std::size_t i = 0; i < k; ++i) {
    a[i][i] = Coef(Rational(0), rng.rational(3, 2));
    for (std::size_t j = i + 1; j < k; ++j) {
      a[i][j] = rng.gaussian(3, 2);
      a[j][i] = -a[i][j].conj();
    }
  }
  std::vector<std::vector<Coef>> minus(k, std::vector<Coef>(k)), plus(k, std::vector<Coef>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Coef id = i == j ? Coef(1) : Coef(0);
      minus[i][j] = id - a[i][j];
      plus[i][j] = id + a[i][j];
    }
  }
  return matmul(minus, inverse(plus));
}

inline Coef inner(const std::vector<Coef>& x, const std::vector<Coef>& y) {
  Coef s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i].conj();
  return s;
}

}  // namespace oracle
