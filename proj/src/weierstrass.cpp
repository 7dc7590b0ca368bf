#include "germforge/weierstrass.hpp"

#include <algorithm>
#include <numeric>

#include "germforge/error.hpp"

namespace germforge {

namespace {

constexpr int kExact = INT_MAX / 4;

struct Weights {
  long u = 1;  // base variables
  long v = 1;  // distinguished variable
  long lo() const { return std::min(u, v); }
  long hi() const { return std::max(u, v); }
  long of(const Multidegree& j) const {
    long w = 0;
    for (std::size_t i = 0; i + 1 < j.size(); ++i) w += u * j[i];
    return w + v * j[j.size() - 1];
  }
};

/// u/v = max_j (l - j) / ord_z(a_j): every term of the low part then has
/// weight >= v l, the weight of w^l.
Weights weights_for(const TruncSeries& low, int l) {
  std::vector<TruncSeries> parts = split_by_last(low);
  long num = 0;
  long den = 1;
  for (int j = 0; j < l; ++j) {
    long ord;
    if (static_cast<std::size_t>(j) < parts.size() && !parts[static_cast<std::size_t>(j)].is_zero()) {
      ord = *parts[static_cast<std::size_t>(j)].order();
    } else {
      long prec = std::max(0, low.precision() - j);
      ord = std::min<long>(prec + 1, 1L << 20);
    }
    if (ord == 0) fail(ErrorKind::not_regular, "lower coefficient does not vanish at the origin");
    if ((l - j) * den > num * ord) {
      num = l - j;
      den = ord;
    }
  }
  long g = std::gcd(num, den);
  if (num == 0) return {1, 1};
  return {num / g, den / g};
}

TruncSeries drop_heavy(const TruncSeries& s, const Weights& wt, long limit) {
  TruncSeries out(s.nvars(), s.precision());
  for (const auto& [j, c] : s.terms()) {
    if (wt.of(j) <= limit) out.add_term(j, c);
  }
  return out;
}

long weight_precision(const Weights& wt, int total_precision) {
  if (total_precision >= kExact) return (1L << 40);
  return wt.lo() * (static_cast<long>(total_precision) + 1) - 1;
}

struct CoreResult {
  TruncSeries q;
  TruncSeries r;
  int q_precision;
  int r_precision;
};

/// Divides g by the regular series f = low + w^l E, given E^{-1}.
CoreResult divide_core(const TruncSeries& g, const TruncSeries& low, const TruncSeries& einv,
                       int l, int f_precision, int target) {
  const std::size_t n = g.nvars();
  const std::size_t k = n - 1;
  Weights wt = weights_for(low, l);
  long want = target >= 0 ? wt.hi() * target + wt.v * l : (1L << 40);
  long limit = std::min({want, weight_precision(wt, g.precision()), weight_precision(wt, f_precision)});
  if (limit >= (1L << 40)) fail(ErrorKind::precision, "division needs a target degree for exact inputs");
  int total = static_cast<int>(limit / wt.lo());

  TruncSeries rem = drop_heavy(g.truncated(total), wt, limit);
  TruncSeries lowt = drop_heavy(low.truncated(total), wt, limit);
  TruncSeries et = einv.truncated(total);
  TruncSeries q(n, total);
  for (int iter = 0;; ++iter) {
    if (iter > 100000) fail(ErrorKind::degenerate, "Weierstrass division did not settle");
    TruncSeries high(n, total);
    TruncSeries keep(n, total);
    for (const auto& [j, c] : rem.terms()) {
      if (j[k] >= l) {
        high.add_term(j - Multidegree::unit(n, k, l), c);
      } else {
        keep.add_term(j, c);
      }
    }
    if (high.is_zero()) break;
    TruncSeries h = drop_heavy(high * et, wt, limit - wt.v * l);
    q += h;
    rem = keep - drop_heavy(h * lowt, wt, limit);
  }
  long qw = limit - wt.v * l;
  if (qw < 0) fail(ErrorKind::precision, "inputs too coarse to determine the quotient");
  CoreResult out{q, rem, static_cast<int>(qw / wt.hi()), static_cast<int>(limit / wt.hi())};
  out.q = out.q.truncated(out.q_precision);
  out.r = out.r.truncated(out.r_precision);
  if (target >= 0 && out.q_precision < target) {
    fail(ErrorKind::precision, "division certified only to degree " + std::to_string(out.q_precision) +
                                   ", requested " + std::to_string(target));
  }
  return out;
}

std::vector<TruncSeries> remainder_parts(const TruncSeries& r, int l) {
  std::vector<TruncSeries> parts = split_by_last(r);
  std::vector<TruncSeries> out;
  for (int j = 0; j < l; ++j) {
    if (static_cast<std::size_t>(j) < parts.size()) {
      out.push_back(parts[static_cast<std::size_t>(j)].truncated(std::max(0, r.precision() - j)));
    } else {
      out.emplace_back(r.nvars() - 1, std::max(0, r.precision() - j));
    }
  }
  return out;
}

}  // namespace

TruncSeries DivisionResult::remainder_series() const {
  if (remainder.empty()) return TruncSeries(quotient.nvars(), quotient.precision());
  const std::size_t k = remainder.front().nvars();
  int prec = kExact;
  for (std::size_t j = 0; j < remainder.size(); ++j) {
    prec = std::min(prec, remainder[j].precision() + static_cast<int>(j));
  }
  TruncSeries out(k + 1, prec);
  for (std::size_t j = 0; j < remainder.size(); ++j) {
    for (const auto& [m, c] : remainder[j].terms()) {
      std::vector<int> e = m.exponents();
      e.push_back(static_cast<int>(j));
      out.add_term(Multidegree(std::move(e)), c);
    }
  }
  return out;
}

DivisionResult weierstrass_divide(const TruncSeries& f, const WeierstrassPoly& p, int n) {
  if (f.nvars() != p.base_vars() + 1) fail(ErrorKind::dimension, "dividend and divisor rings differ");
  const int l = p.degree();
  TruncSeries full = p.to_series();
  TruncSeries low = full - TruncSeries::monomial(f.nvars(), full.precision(),
                                                 Multidegree::unit(f.nvars(), p.base_vars(), l));
  TruncSeries one = TruncSeries::constant(f.nvars(), kExact, Coef(1));
  CoreResult core = divide_core(f, low, one, l, full.precision(), n);
  return DivisionResult{core.q, remainder_parts(core.r, l)};
}

std::optional<int> regular_order(const TruncSeries& f) {
  if (f.nvars() == 0) return std::nullopt;
  const std::size_t k = f.nvars() - 1;
  for (const auto& [j, c] : f.terms()) {
    if (j.total() == j[k]) return j[k];
  }
  return std::nullopt;
}

Preparation weierstrass_prepare(const TruncSeries& f, int n) {
  auto l = regular_order(f);
  if (!l) {
    fail(ErrorKind::not_regular, "series is not regular in the last variable within precision " +
                                     std::to_string(f.precision()));
  }
  const std::size_t nv = f.nvars();
  const std::size_t k = nv - 1;
  if (*l == 0) fail(ErrorKind::invalid_input, "series is a unit; nothing to prepare");
  TruncSeries low(nv, f.precision());
  TruncSeries e(nv, f.precision() - *l);
  for (const auto& [j, c] : f.terms()) {
    if (j[k] < *l) {
      low.add_term(j, c);
    } else {
      e.add_term(j - Multidegree::unit(nv, k, *l), c);
    }
  }
  TruncSeries wl = TruncSeries::monomial(nv, kExact, Multidegree::unit(nv, k, *l));
  CoreResult core = divide_core(wl, low, e.inverse(), *l, f.precision(), n);
  std::vector<TruncSeries> r = remainder_parts(core.r, *l);
  for (auto& b : r) b = -b;
  return Preparation{core.q.inverse(), WeierstrassPoly(k, std::move(r))};
}

TruncSeries discriminant(const WeierstrassPoly& p) {
  const int l = p.degree();
  const std::size_t k = p.base_vars();
  if (l < 1) fail(ErrorKind::invalid_input, "discriminant needs positive degree");
  int prec = kExact;
  for (const auto& b : p.lower()) prec = std::min(prec, b.precision());
  if (prec >= kExact) prec = 0;
  std::vector<TruncSeries> c;
  for (int j = 0; j < l; ++j) c.push_back(p.coeff(j).truncated(prec));
  c.push_back(TruncSeries::constant(k, prec, Coef(1)));
  std::vector<TruncSeries> d;
  for (int j = 0; j < l; ++j) d.push_back(c[static_cast<std::size_t>(j + 1)] * Coef(j + 1));

  const int m = 2 * l - 1;
  std::vector<std::vector<const TruncSeries*>> rows(static_cast<std::size_t>(m),
                                                    std::vector<const TruncSeries*>(static_cast<std::size_t>(m), nullptr));
  for (int i = 0; i < l - 1; ++i) {
    for (int j = 0; j <= l; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + l - j)] = &c[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      rows[static_cast<std::size_t>(l - 1 + i)][static_cast<std::size_t>(i + l - 1 - j)] = &d[static_cast<std::size_t>(j)];
    }
  }
  // Division-free determinant: expand row by row over the set of used columns.
  std::map<unsigned, TruncSeries> layer;
  layer.emplace(0u, TruncSeries::constant(k, prec, Coef(1)));
  for (int i = 0; i < m; ++i) {
    std::map<unsigned, TruncSeries> next;
    for (const auto& [mask, val] : layer) {
      for (int col = 0; col < m; ++col) {
        const TruncSeries* entry = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
        if ((mask >> col) & 1u || entry == nullptr || entry->is_zero()) continue;
        int above = __builtin_popcount(mask >> (col + 1));
        TruncSeries term = val * *entry;
        if (above % 2) term = -term;
        unsigned nm = mask | (1u << col);
        auto it = next.find(nm);
        if (it == next.end()) {
          next.emplace(nm, std::move(term));
        } else {
          it->second += term;
        }
      }
    }
    layer = std::move(next);
  }
  TruncSeries det = layer.empty() ? TruncSeries(k, prec) : layer.begin()->second;
  if ((l * (l - 1) / 2) % 2) det = -det;
  return det;
}

namespace {

TruncSeries restrict_to_line(const TruncSeries& s, const std::vector<long>& dir) {
  TruncSeries out(1, s.precision());
  for (const auto& [j, c] : s.terms()) {
    mpz_class scale = 1;
    for (std::size_t i = 0; i < j.size(); ++i) {
      mpz_class f;
      mpz_pow_ui(f.get_mpz_t(), mpz_class(dir[i]).get_mpz_t(), static_cast<unsigned long>(j[i]));
      scale *= f;
    }
    out.add_term(Multidegree{j.total()}, c * Coef(Rational(scale)));
  }
  return out;
}

std::vector<std::vector<long>> trial_directions(std::size_t k) {
  std::vector<std::vector<long>> out;
  for (std::size_t ones = 1; ones <= k; ++ones) {
    std::vector<long> v(k, 0);
    for (std::size_t i = 0; i < ones; ++i) v[i] = 1;
    out.push_back(v);
  }
  for (long base : {0L, 2L, 3L, -1L}) {
    std::vector<long> v(k);
    long acc = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (base == 0) {
        v[i] = static_cast<long>(i) + 1;
      } else {
        v[i] = acc;
        acc *= base;
      }
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

Restriction generic_restrict(const WeierstrassPoly& p) {
  TruncSeries d = discriminant(p);
  if (d.is_zero()) {
    fail(ErrorKind::degenerate, "discriminant vanishes to precision " + std::to_string(d.precision()) +
                                    "; the polynomial may not be reduced");
  }
  const std::size_t k = p.base_vars();
  if (k == 0) {
    return Restriction{{}, WeierstrassPoly(1, std::vector<TruncSeries>(p.lower().size(), TruncSeries(1, p.precision()))),
                       TruncSeries::constant(1, d.precision(), d.constant_term()), 0};
  }
  for (const auto& dir : trial_directions(k)) {
    TruncSeries dl = restrict_to_line(d, dir);
    if (dl.is_zero()) continue;
    std::vector<TruncSeries> lower;
    for (const auto& b : p.lower()) lower.push_back(restrict_to_line(b, dir));
    return Restriction{dir, WeierstrassPoly(1, std::move(lower)), dl, *dl.order()};
  }
  fail(ErrorKind::degenerate, "no trial direction keeps the discriminant nonzero");
}

NormalForm make_normal_form(std::size_t nvars, const WeierstrassPoly& p,
                            const std::vector<std::pair<std::size_t, TruncSeries>>& numerators) {
  const std::size_t k = p.base_vars();
  if (k + 1 > nvars) fail(ErrorKind::dimension, "normal form needs at least k+1 variables");
  NormalForm nf;
  nf.nvars = nvars;
  nf.k = k;
  nf.p = p;
  nf.discriminant = discriminant(p);
  std::vector<std::size_t> base(k);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::size_t> ext(k + 1);
  std::iota(ext.begin(), ext.end(), 0);
  TruncSeries dn = embed(nf.discriminant, nvars, base);
  std::vector<bool> seen(nvars, false);
  for (const auto& [j, qnum] : numerators) {
    if (j <= k || j >= nvars) fail(ErrorKind::dimension, "relation index out of range");
    if (seen[j]) fail(ErrorKind::invalid_input, "duplicate relation for z" + std::to_string(j + 1));
    seen[j] = true;
    if (qnum.nvars() != k + 1) fail(ErrorKind::dimension, "Q_j must live in z_1..z_{k+1}");
    TruncSeries zj = TruncSeries::variable(nvars, dn.precision() + 1, j);
    TruncSeries q = dn * zj - embed(qnum, nvars, ext);
    nf.relations.push_back(Relation{j, qnum, q});
  }
  for (std::size_t j = k + 1; j < nvars; ++j) {
    if (!seen[j]) fail(ErrorKind::invalid_input, "missing relation for z" + std::to_string(j + 1));
  }
  std::sort(nf.relations.begin(), nf.relations.end(),
            [](const Relation& a, const Relation& b) { return a.j < b.j; });
  return nf;
}

namespace {

/// Pullback that tolerates series in zero variables and constant terms.
UniSeries pull(const TruncSeries& s, const std::vector<UniSeries>& comps, int prec) {
  if (s.nvars() == 0 || vanishing_order(FormalCurve(comps)).lower_bound) {
    UniSeries out(prec);
    out[0] = s.constant_term();
    return out;
  }
  TruncSeries shifted = s;
  Coef c0 = s.constant_term();
  shifted.set_term(Multidegree(s.nvars()), Coef());
  UniSeries out = pullback(shifted, FormalCurve(comps), prec);
  out[0] += c0;
  return out;
}

}  // namespace

LiftResult prime_curve_lift(const NormalForm& nf, const FormalCurve& base, int n) {
  const std::size_t k = nf.k;
  if (base.dim() != k + 1) fail(ErrorKind::dimension, "base curve must live in z_1..z_{k+1}");
  int prec = base.precision();
  UniSeries ps = pullback(nf.p.to_series(), base);
  auto pord = ps.order();
  int pval = pord ? *pord : ps.precision() + 1;
  if (pval < n) {
    fail(ErrorKind::invalid_input, "base curve annihilates p only to order " + std::to_string(pval) +
                                       ", requested " + std::to_string(n));
  }
  std::vector<UniSeries> head(base.components().begin(), base.components().begin() + static_cast<long>(k));
  UniSeries den = pull(nf.discriminant, head, prec);
  auto dord = den.order();
  if (!dord) fail(ErrorKind::degenerate, "discriminant vanishes along the base curve to precision");

  std::vector<UniSeries> comps(nf.nvars);
  for (std::size_t i = 0; i <= k; ++i) comps[i] = base[i];
  for (const auto& rel : nf.relations) {
    UniSeries num = pull(rel.Q, base.components(), prec);
    auto nord = num.order();
    if (nord && *nord <= *dord) {
      fail(ErrorKind::invalid_input, "Q_" + std::to_string(rel.j + 1) + " vanishes to order " +
                                         std::to_string(*nord) + " along the curve, not above ord D = " +
                                         std::to_string(*dord));
    }
    if (!nord) {
      comps[rel.j] = UniSeries(std::max(0, std::min(num.precision(), den.precision()) - *dord));
    } else {
      comps[rel.j] = divide(num, den);
    }
  }
  LiftResult out{FormalCurve(std::move(comps)), *dord, {0, false}};
  std::optional<Order> worst;
  auto note = [&](const TruncSeries& g) {
    UniSeries v = pullback(g, out.curve);
    auto o = v.order();
    Order ord = o ? Order{*o, false} : Order{v.precision() + 1, true};
    if (!worst || ord.value < worst->value) worst = ord;
  };
  for (const auto& g : nf.associated_generators()) note(g);
  out.certified = *worst;
  return out;
}

std::optional<AssociatedMembership> associated_membership(const TruncSeries& f, const NormalForm& nf,
                                                          int maxnu, int n) {
  if (f.nvars() != nf.nvars) fail(ErrorKind::dimension, "series and normal form rings differ");
  std::vector<std::size_t> base(nf.k);
  std::iota(base.begin(), base.end(), 0);
  TruncSeries d = embed(nf.discriminant, nf.nvars, base);
  IdealPresentation ideal(nf.nvars, nf.associated_generators());
  auto dord = d.order();
  if (dord && mul_precision(maxnu, *dord) > n && n > d.precision()) {
    fail(ErrorKind::precision, "discriminant powers exceed the available precision");
  }
  TruncSeries g = f;
  for (int nu = 0; nu <= maxnu; ++nu) {
    if (nu > 0) g = g * d;
    if (n > g.precision() || n > ideal.precision()) {
      fail(ErrorKind::precision, "membership at level " + std::to_string(n) +
                                     " needs more precision than D^" + std::to_string(nu) + " f carries");
    }
    MembershipResult m = membership_jet(g, ideal, n);
    if (m.member) return AssociatedMembership{nu, std::move(m.combination)};
  }
  return std::nullopt;
}

}  // namespace germforge
