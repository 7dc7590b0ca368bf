#include "germforge/type_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <thread>

#include "germforge/error.hpp"

namespace germforge {

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GERMFORGE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

Order series_order(const TruncSeries& s) {
  auto o = s.order();
  return o ? Order{*o, false} : Order{s.precision() + 1, true};
}

TypeRatio ratio_of(const TruncSeries& pulled, int nu) {
  TypeRatio t;
  t.numerator = series_order(pulled);
  t.denominator = nu;
  t.value = Rational(t.numerator.value, nu);
  t.value.canonicalize();
  return t;
}

}  // namespace

TypeRatio dangelo_ratio(const HermitianForm& r, const FormalCurve& zeta) {
  Order nu = vanishing_order(zeta);
  if (nu.lower_bound) fail(ErrorKind::constant_curve, "curve vanishes identically to its precision");
  return ratio_of(pullback(r, zeta), nu.value);
}

WitnessResult witness_check(const HermitianForm& r, const FormalCurve& zeta, int n) {
  Order nu = vanishing_order(zeta);
  if (nu.lower_bound) fail(ErrorKind::constant_curve, "curve vanishes identically to its precision");
  int avail = std::min(mul_precision(r.precision(), nu.value), zeta.precision());
  if (n > avail) {
    fail(ErrorKind::precision, "order " + std::to_string(n) + " requested but the pullback is known only to order " +
                                   std::to_string(avail));
  }
  TruncSeries s = pullback(r, zeta, n);
  WitnessResult w;
  if (s.is_zero()) {
    w.certified = true;
    w.order_verified = n;
    return w;
  }
  const auto& [mono, c] = *s.terms().begin();
  w.first_degree = mono.total();
  w.monomial = mono;
  w.coefficient = c;
  return w;
}

namespace {

struct Trial {
  std::vector<int> a;
  std::vector<std::vector<Coef>> c;
};

FormalCurve trial_curve(const Trial& t, int prec) {
  std::vector<UniSeries> comps;
  for (std::size_t i = 0; i < t.a.size(); ++i) {
    UniSeries s(prec);
    if (t.a[i] > 0) {
      for (std::size_t j = 0; j < t.c[i].size(); ++j) {
        int e = t.a[i] + static_cast<int>(j);
        if (e <= prec) s[e] = t.c[i][j];
      }
    }
    comps.push_back(std::move(s));
  }
  return FormalCurve(std::move(comps));
}

struct Score {
  Order order;
  std::size_t lowest = 0;
};

bool better(const Score& x, const Score& y) {
  if (x.order.value != y.order.value) return x.order.value > y.order.value;
  if (x.order.lower_bound != y.order.lower_bound) return x.order.lower_bound;
  return x.lowest < y.lowest;
}

struct Evaluated {
  TruncSeries pulled;
  Score score;
};

Evaluated evaluate(const HermitianForm& r, const Trial& t, int prec) {
  TruncSeries s = pullback(r, trial_curve(t, prec));
  Score sc{series_order(s), 0};
  if (!sc.order.lower_bound) {
    for (const auto& [m, c] : s.terms()) {
      if (m.total() != sc.order.value) break;
      ++sc.lowest;
    }
  }
  return {std::move(s), sc};
}

/// Real-linear solve of E0 + alpha s + beta u = 0 for delta = s + i u.
std::optional<Coef> secant_step(const Coef& e0, const Coef& alpha, const Coef& beta) {
  Rational a11 = alpha.re(), a12 = beta.re(), a21 = alpha.im(), a22 = beta.im();
  Rational b1 = -e0.re(), b2 = -e0.im();
  Rational det = a11 * a22 - a12 * a21;
  if (sgn(det) != 0) {
    return Coef((b1 * a22 - a12 * b2) / det, (a11 * b2 - a21 * b1) / det);
  }
  // Rank <= 1: use whichever column reaches the target.
  if (sgn(a11) != 0 || sgn(a21) != 0) {
    Rational s = sgn(a11) != 0 ? b1 / a11 : b2 / a21;
    if (a11 * s == b1 && a21 * s == b2) return Coef(s);
  }
  if (sgn(a12) != 0 || sgn(a22) != 0) {
    Rational u = sgn(a12) != 0 ? b1 / a12 : b2 / a22;
    if (a12 * u == b1 && a22 * u == b2) return Coef(Rational(0), u);
  }
  return std::nullopt;
}

struct Move {
  std::size_t i, j;
  Coef value;
};

/// Candidate moves that kill the first lowest-order coefficient, one slot each.
std::vector<Move> candidate_moves(const HermitianForm& r, const Trial& t, const Evaluated& cur, int prec) {
  std::vector<Move> out;
  if (cur.score.order.lower_bound) return out;
  const auto& [mono, e0] = *cur.pulled.terms().begin();
  for (std::size_t i = 0; i < t.a.size(); ++i) {
    if (t.a[i] == 0) continue;
    for (std::size_t j = 0; j < t.c[i].size(); ++j) {
      Trial t1 = t;
      t1.c[i][j] += Coef(1);
      Trial ti = t;
      ti.c[i][j] += Coef::imag_unit();
      Coef alpha = pullback(r, trial_curve(t1, prec)).coeff(mono) - e0;
      Coef beta = pullback(r, trial_curve(ti, prec)).coeff(mono) - e0;
      auto delta = secant_step(e0, alpha, beta);
      if (!delta || delta->is_zero()) continue;
      Coef v = t.c[i][j] + *delta;
      if (j == 0 && v.is_zero()) continue;
      out.push_back({i, j, v});
    }
  }
  return out;
}

Trial apply_move(const Trial& t, const Move& m) {
  Trial r = t;
  r.c[m.i][m.j] = m.value;
  return r;
}

SearchHit search_tuple(const HermitianForm& r, const std::vector<int>& a, int d, const SearchOptions& opt) {
  Trial t{a, std::vector<std::vector<Coef>>(a.size(), std::vector<Coef>(static_cast<std::size_t>(d) + 1))};
  for (auto& row : t.c) row[0] = Coef(1);
  Evaluated cur = evaluate(r, t, opt.precision);
  for (int round = 0; round < opt.max_rounds && !cur.score.order.lower_bound; ++round) {
    std::optional<std::pair<Trial, Evaluated>> best;
    auto consider = [&](Trial cand) {
      Evaluated ev = evaluate(r, cand, opt.precision);
      if (better(ev.score, best ? best->second.score : cur.score)) best.emplace(std::move(cand), std::move(ev));
    };
    std::vector<Move> moves = candidate_moves(r, t, cur, opt.precision);
    for (const auto& m : moves) consider(apply_move(t, m));
    if (!best) {
      // Depth-1 backtracking: a non-improving move followed by a greedy one.
      for (const auto& m : moves) {
        Trial t1 = apply_move(t, m);
        Evaluated e1 = evaluate(r, t1, opt.precision);
        for (const auto& m2 : candidate_moves(r, t1, e1, opt.precision)) consider(apply_move(t1, m2));
      }
    }
    if (!best) break;
    t = std::move(best->first);
    cur = std::move(best->second);
  }
  FormalCurve curve = trial_curve(t, opt.precision);
  Order nu = vanishing_order(curve);
  return SearchHit{a, curve, ratio_of(cur.pulled, nu.value)};
}

void enumerate(std::size_t n, int amax, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == n) {
    int g = 0;
    for (int v : cur) g = std::gcd(g, v);
    if (g == 1) out.push_back(cur);
    return;
  }
  for (int v = 0; v <= amax; ++v) {
    cur.push_back(v);
    enumerate(n, amax, cur, out);
    cur.pop_back();
  }
}

bool hit_before(const SearchHit& x, const SearchHit& y) {
  if (x.ratio.lower_bound() != y.ratio.lower_bound()) return x.ratio.lower_bound();
  if (x.ratio.value != y.ratio.value) return x.ratio.value > y.ratio.value;
  return false;
}

}  // namespace

std::vector<SearchHit> monomial_curve_search(const HermitianForm& r, int max_exponent, int max_coeff_degree,
                                             const SearchOptions& options) {
  if (max_exponent < 1 || max_coeff_degree < 0) fail(ErrorKind::invalid_input, "search bounds must be positive");
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur;
  enumerate(r.nvars(), max_exponent, cur, tuples);

  std::vector<std::optional<SearchHit>> hits(tuples.size());
  std::vector<std::exception_ptr> errors(tuples.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++) {
      try {
        hits[i] = search_tuple(r, tuples[i], max_coeff_degree, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t workers = std::min(worker_count(options.threads), std::max<std::size_t>(1, tuples.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<SearchHit> out;
  for (auto& h : hits) out.push_back(std::move(*h));
  std::stable_sort(out.begin(), out.end(), hit_before);
  return out;
}

IdealPresentation build_ideal(const Decomposition& d, const UnitaryBlock& u) {
  if (!u.exact) fail(ErrorKind::invalid_input, "an exact ideal needs an exact unitary block");
  const std::size_t nf = d.families.size();
  if (u.k < nf) {
    fail(ErrorKind::dimension, "unitary block of size " + std::to_string(u.k) + " cannot cover " +
                                   std::to_string(nf) + " active families");
  }
  const std::size_t n = d.nvars;
  const int k = d.precision;
  auto f = [&](std::size_t j) { return j < nf ? d.families[j].f : TruncSeries(n, k); };
  auto g = [&](std::size_t j) { return j < nf ? d.families[j].g : TruncSeries(n, k); };
  std::vector<TruncSeries> gens{d.h};
  for (std::size_t i = 0; i < u.k; ++i) {
    TruncSeries s = f(i);
    for (std::size_t j = 0; j < u.k; ++j) {
      if (!u.at(i, j).is_zero()) s -= g(j) * u.at(i, j);
    }
    gens.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < u.k; ++i) {
    TruncSeries s = -g(i);
    for (std::size_t j = 0; j < u.k; ++j) {
      if (!u.at(j, i).is_zero()) s += f(j) * u.at(j, i).conj();
    }
    gens.push_back(std::move(s));
  }
  return IdealPresentation(n, std::move(gens), std::nullopt, k);
}

namespace {

std::vector<UniSeries> mix(const UnitaryBlock& u, const std::vector<UniSeries>& v, int prec) {
  std::vector<UniSeries> out;
  for (std::size_t i = 0; i < u.k; ++i) {
    UniSeries s(prec);
    for (std::size_t j = 0; j < u.k; ++j) {
      if (!u.at(i, j).is_zero()) s += v[j] * u.at(i, j);
    }
    out.push_back(std::move(s));
  }
  return out;
}

TruncSeries norm_squared(const std::vector<UniSeries>& v, int n) {
  TruncSeries out(2, n);
  for (const auto& s : v) {
    for (int a = 0; a <= n; ++a) {
      if (s[a].is_zero()) continue;
      for (int b = 0; a + b <= n; ++b) {
        if (!s[b].is_zero()) out.add_term(Multidegree{a, b}, s[a] * s[b].conj());
      }
    }
  }
  return out;
}

}  // namespace

EquivalenceReport equivalence_check(const Decomposition& d, const UnitaryBlock& u, const FormalCurve& zeta, int n) {
  if (!u.exact) fail(ErrorKind::invalid_input, "the norm chain is checked exactly; the block must be exact");
  const std::size_t nf = d.families.size();
  if (u.k < nf) fail(ErrorKind::dimension, "unitary block smaller than the number of families");
  if (zeta.dim() != d.nvars) fail(ErrorKind::dimension, "curve and decomposition dimensions differ");
  UniSeries ph = pullback(d.h, zeta);
  int prec = ph.precision();
  std::vector<UniSeries> pf, pg;
  for (const auto& fam : d.families) {
    pf.push_back(pullback(fam.f, zeta));
    pg.push_back(pullback(fam.g, zeta));
    prec = std::min({prec, pf.back().precision(), pg.back().precision()});
  }
  if (n > prec) {
    fail(ErrorKind::precision, "norm chain requested through degree " + std::to_string(n) +
                                   " but pullbacks are known only to " + std::to_string(prec));
  }
  for (auto& s : pf) s = s.truncated(n);
  for (auto& s : pg) s = s.truncated(n);
  pf.resize(u.k, UniSeries(n));
  pg.resize(u.k, UniSeries(n));

  EquivalenceReport rep;
  for (int m = 0; m <= n; ++m) {
    if (!ph[m].is_zero()) {
      rep.failed = "pullback of h";
      rep.first_degree = m;
      return rep;
    }
  }
  UnitaryBlock ua = u.adjoint();
  TruncSeries nf2 = norm_squared(pf, n);
  TruncSeries nug = norm_squared(mix(u, pg, n), n);
  TruncSeries ng = norm_squared(pg, n);
  TruncSeries nuf = norm_squared(mix(ua, pf, n), n);
  const std::pair<const char*, std::pair<const TruncSeries*, const TruncSeries*>> chain[] = {
      {"|f|^2 = |U g|^2", {&nf2, &nug}},
      {"|U g|^2 = |g|^2", {&nug, &ng}},
      {"|g|^2 = |U* f|^2", {&ng, &nuf}},
      {"|U* f|^2 = |f|^2", {&nuf, &nf2}},
  };
  for (const auto& [name, pair] : chain) {
    TruncSeries diff = *pair.first - *pair.second;
    if (!diff.is_zero()) {
      rep.failed = name;
      rep.first_degree = diff.terms().begin()->first.total();
      return rep;
    }
  }
  rep.holds = true;
  return rep;
}

}  // namespace germforge
