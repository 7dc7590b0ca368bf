#include "germforge/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "germforge/error.hpp"

namespace germforge {

namespace {

using Cplx = std::complex<double>;
constexpr double kZeroTol = 1e-9;

bool is_zero(const Coef& c) { return c.is_zero(); }
bool is_zero(const Cplx& c) { return std::abs(c) <= kZeroTol; }

template <class F>
F power(const F& x, long e) {
  F r(1);
  F b = x;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return r;
}

template <class F>
std::optional<int> order_of(const std::vector<F>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_zero(s[i])) return static_cast<int>(i);
  }
  return std::nullopt;
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---- exact univariate polynomials over Q(i), low degree first ----

using Poly = std::vector<Coef>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Coef(static_cast<long>(i)));
  trim(d);
  return d;
}

/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Coef());
  Coef inv = b.back().inverse();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    Coef f = a[i] * inv;
    q[i - (b.size() - 1)] = f;
    if (!f.is_zero()) {
      for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= f * b[j];
    }
    if (i == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly monic(Poly p) {
  trim(p);
  Coef inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : monic(a);
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Yun's square-free factorization: p = c * prod s_i^i.
std::vector<std::pair<Poly, int>> squarefree(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  Poly dp = derivative(p);
  Poly a = gcd(p, dp);
  Poly b = divmod(p, a).first;
  Poly c = divmod(dp, a).first;
  Poly d = sub(c, derivative(b));
  for (int i = 1; b.size() > 1; ++i) {
    Poly g = gcd(b, d);
    if (g.size() > 1) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = sub(c, derivative(b));
  }
  return out;
}

Coef eval(const Poly& p, const Coef& x) {
  Coef r;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

/// Durand-Kerner iteration on a polynomial with distinct roots.
std::vector<Cplx> numeric_roots(const std::vector<Cplx>& p) {
  const std::size_t n = p.size() - 1;
  std::vector<Cplx> roots(n);
  if (n == 0) return roots;
  Cplx lead = p.back();
  double radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(p[i] / lead));
  radius = 1 + radius;
  const Cplx seed(0.4, 0.9);
  Cplx z(1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    roots[i] = z * radius;
    z *= seed;
  }
  auto value = [&](const Cplx& x) {
    Cplx r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r / lead;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    double delta = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Cplx den = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) den *= roots[i] - roots[j];
      }
      Cplx step = value(roots[i]) / den;
      roots[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-15) break;
  }
  return roots;
}

std::vector<Cplx> to_float(const Poly& p) {
  std::vector<Cplx> out;
  for (const auto& c : p) out.push_back(c.to_complex());
  return out;
}

bool root_before(const Cplx& a, const Cplx& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

template <class F>
struct Root {
  F value;
  int multiplicity;
};

struct ExactRoots {
  std::vector<Root<Coef>> exact;
  std::vector<Root<Cplx>> floating;
};

ExactRoots roots_of(const Poly& psi) {
  ExactRoots out;
  for (auto& [factor, mult] : squarefree(psi)) {
    Poly rest = factor;
    std::vector<Cplx> approx = numeric_roots(to_float(rest));
    std::sort(approx.begin(), approx.end(), root_before);
    std::vector<Cplx> unresolved;
    for (const Cplx& x : approx) {
      bool found = false;
      for (long den : {1L, 1000L, 1000000L}) {
        Coef cand(rationalize(x.real(), den), rationalize(x.imag(), den));
        if (rest.size() > 1 && eval(rest, cand).is_zero()) {
          out.exact.push_back({cand, mult});
          rest = divmod(rest, Poly{-cand, Coef(1)}).first;
          found = true;
          break;
        }
      }
      if (!found) unresolved.push_back(x);
    }
    if (rest.size() > 1) {
      // Polish the remaining roots on the deflated factor.
      std::vector<Cplx> polished = numeric_roots(to_float(rest));
      std::sort(polished.begin(), polished.end(), root_before);
      for (const Cplx& x : polished) out.floating.push_back({x, mult});
    }
  }
  std::stable_sort(out.exact.begin(), out.exact.end(), [](const auto& a, const auto& b) {
    return root_before(a.value.to_complex(), b.value.to_complex());
  });
  return out;
}

std::vector<Root<Cplx>> roots_of(const std::vector<Cplx>& psi) {
  std::vector<Cplx> p = psi;
  while (p.size() > 1 && std::abs(p.back()) <= kZeroTol) p.pop_back();
  // Multiple roots: cluster the Durand-Kerner output.
  std::vector<Cplx> raw = numeric_roots(p);
  std::vector<Root<Cplx>> out;
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    Cplx sum = raw[i];
    int count = 1;
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (!used[j] && std::abs(raw[j] - raw[i]) < 1e-5) {
        used[j] = true;
        sum += raw[j];
        ++count;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return root_before(a.value, b.value); });
  return out;
}

// ---- Newton polygon iteration ----

/// G(sigma, v) = sum_i a[i](sigma) v^i together with the map
/// t = scale * sigma^d, w = W(sigma) + lam * sigma^e * v.
template <class F>
struct State {
  std::vector<std::vector<F>> a;
  F scale{1};
  int d = 1;
  std::vector<F> W;
  F lam{1};
  int e = 0;
};

template <class F>
struct Raw {
  int d;
  int mult;
  F scale;
  std::vector<F> W;
  int precision;
};

struct Context {
  int n;
  int cap;
  bool exact_only;
  std::vector<Raw<Coef>> exact;
  std::vector<Raw<Cplx>> floating;
  int skipped = 0;
  void push(Raw<Coef> r) { exact.push_back(std::move(r)); }
  void push(Raw<Cplx> r) { floating.push_back(std::move(r)); }
};

template <class F>
void emit(const State<F>& s, int mult, int precision, Context& ctx) {
  precision = std::min(precision, ctx.cap);
  std::vector<F> w(static_cast<std::size_t>(precision) + 1, F(0));
  for (std::size_t i = 0; i < s.W.size() && i < w.size(); ++i) w[i] = s.W[i];
  ctx.push(Raw<F>{s.d, mult, s.scale, std::move(w), precision});
}

template <class F>
State<F> substitute(const State<F>& s, int p, int q, long k, const F& xi, int alpha, int beta, int m,
                    int cap) {
  const int deg = static_cast<int>(s.a.size()) - 1;
  std::vector<std::vector<F>> b(static_cast<std::size_t>(deg) + 1);
  const F xa = power(xi, alpha);
  const F xb = power(xi, beta);
  for (int i = 0; i <= deg; ++i) {
    const auto& ai = s.a[static_cast<std::size_t>(i)];
    long prec = static_cast<long>(q) * static_cast<long>(ai.size()) - 1 + static_cast<long>(p) * i - k;
    prec = std::min<long>(prec, cap);
    if (prec < 0) fail(ErrorKind::precision, "Newton polygon step exhausted the series precision");
    std::vector<F> bi(static_cast<std::size_t>(prec) + 1, F(0));
    F scale_o = power(xb, i);
    for (std::size_t o = 0; o < ai.size(); ++o, scale_o = scale_o * xa) {
      if (is_zero(ai[o])) continue;
      long idx = static_cast<long>(q) * static_cast<long>(o) + static_cast<long>(p) * i - k;
      if (idx < 0) {
        if constexpr (std::is_same_v<F, Coef>) {
          fail(ErrorKind::degenerate, "term below the Newton polygon");
        } else {
          continue;
        }
      }
      if (idx > prec) continue;
      bi[static_cast<std::size_t>(idx)] = ai[o] * scale_o;
    }
    b[static_cast<std::size_t>(i)] = std::move(bi);
  }
  State<F> t;
  t.a.resize(static_cast<std::size_t>(deg) + 1);
  for (int j = 0; j <= deg; ++j) {
    std::size_t len = SIZE_MAX;
    for (int i = j; i <= deg; ++i) len = std::min(len, b[static_cast<std::size_t>(i)].size());
    std::vector<F> aj(len, F(0));
    for (int i = j; i <= deg; ++i) {
      F c(binom(i, j));
      const auto& bi = b[static_cast<std::size_t>(i)];
      for (std::size_t o = 0; o < len; ++o) {
        if (!is_zero(bi[o])) aj[o] = aj[o] + c * bi[o];
      }
    }
    if (j < m && !aj.empty()) aj[0] = F(0);  // vanishes identically by choice of xi
    t.a[static_cast<std::size_t>(j)] = std::move(aj);
  }
  t.d = s.d * q;
  t.scale = s.scale * power(xa, s.d);
  int new_e = q * s.e + p;
  t.W.assign(static_cast<std::size_t>(std::max(new_e, q * static_cast<int>(s.W.size()))) + 1, F(0));
  F sc(1);
  for (std::size_t i = 0; i < s.W.size(); ++i, sc = sc * xa) {
    if (!is_zero(s.W[i])) t.W[static_cast<std::size_t>(q) * i] = s.W[i] * sc;
  }
  t.lam = s.lam * power(xa, s.e) * xb;
  t.W[static_cast<std::size_t>(new_e)] = t.W[static_cast<std::size_t>(new_e)] + t.lam;
  t.e = new_e;
  return t;
}

State<Cplx> to_float(const State<Coef>& s) {
  State<Cplx> t;
  for (const auto& ai : s.a) {
    std::vector<Cplx> v;
    for (const auto& c : ai) v.push_back(c.to_complex());
    t.a.push_back(std::move(v));
  }
  t.scale = s.scale.to_complex();
  t.d = s.d;
  for (const auto& c : s.W) t.W.push_back(c.to_complex());
  t.lam = s.lam.to_complex();
  t.e = s.e;
  return t;
}

std::pair<int, int> bezout(int p, int q) {
  // beta q - alpha p = 1 with 0 <= alpha < q.
  for (int alpha = 0; alpha < q; ++alpha) {
    if ((1 + static_cast<long>(alpha) * p) % q == 0) {
      return {alpha, static_cast<int>((1 + static_cast<long>(alpha) * p) / q)};
    }
  }
  fail(ErrorKind::degenerate, "edge slope not in lowest terms");
}

template <class F>
void solve(const State<F>& s, int r, Context& ctx);

template <class F>
void descend(const State<F>& s, int p, int q, long k, const F& xi, int mult, Context& ctx) {
  auto [alpha, beta] = bezout(p, q);
  State<F> next = substitute(s, p, q, k, xi, alpha, beta, mult, ctx.cap);
  solve(next, mult, ctx);
}

template <class F>
void solve(const State<F>& s, int r, Context& ctx) {
  if (s.e > ctx.n) {
    emit(s, r, s.e, ctx);
    return;
  }
  std::vector<std::optional<int>> ord(static_cast<std::size_t>(r) + 1);
  for (int i = 0; i <= r; ++i) ord[static_cast<std::size_t>(i)] = order_of(s.a[static_cast<std::size_t>(i)]);
  auto prec_of = [&](int i) { return static_cast<int>(s.a[static_cast<std::size_t>(i)].size()) - 1; };
  int i0 = 0;
  while (!ord[static_cast<std::size_t>(i0)]) ++i0;
  if (i0 > 0) {
    // Roots of G near v = 0: their order is at least the smallest slope
    // the unknown tails of a_0..a_{i0-1} allow.
    int o = *ord[static_cast<std::size_t>(i0)];
    int gain = INT_MAX;
    for (int j = 0; j < i0; ++j) gain = std::min(gain, (prec_of(j) + 1 - o) / (i0 - j));
    emit(s, i0, s.e + std::max(gain, 1) - 1, ctx);
    if (i0 == r) return;
  }

  // Lower hull of the known points, left to right.
  std::vector<std::pair<int, int>> hull;
  for (int i = i0; i <= r; ++i) {
    if (!ord[static_cast<std::size_t>(i)]) continue;
    std::pair<int, int> pt{i, *ord[static_cast<std::size_t>(i)]};
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // Drop the middle point when it lies on or above the chord.
      long cross = static_cast<long>(x2 - x1) * (pt.second - y1) - static_cast<long>(y2 - y1) * (pt.first - x1);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  // Unknown coefficients must lie strictly above the hull.
  for (int i = i0 + 1; i < r; ++i) {
    if (ord[static_cast<std::size_t>(i)]) continue;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
      auto [x1, y1] = hull[h];
      auto [x2, y2] = hull[h + 1];
      if (i < x1 || i > x2) continue;
      // prec_i + 1 > y1 + (y2 - y1)(i - x1)/(x2 - x1)
      if (static_cast<long>(prec_of(i) + 1 - y1) * (x2 - x1) <= static_cast<long>(y2 - y1) * (i - x1)) {
        emit(s, r - i0, s.e, ctx);
        return;
      }
    }
  }

  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    auto [ia, oa] = hull[h];
    auto [ib, ob] = hull[h + 1];
    int num = oa - ob;
    int den = ib - ia;
    int g = std::gcd(num, den);
    int p = num / g;
    int q = den / g;
    long k = static_cast<long>(q) * oa + static_cast<long>(p) * ia;
    int len = den / q;
    if constexpr (std::is_same_v<F, Coef>) {
      Poly psi(static_cast<std::size_t>(len) + 1);
      for (int t = 0; t <= len; ++t) {
        int i = ia + q * t;
        int o = oa - p * t;
        const auto& ai = s.a[static_cast<std::size_t>(i)];
        if (o >= 0 && static_cast<std::size_t>(o) < ai.size()) psi[static_cast<std::size_t>(t)] = ai[static_cast<std::size_t>(o)];
      }
      ExactRoots roots = roots_of(psi);
      for (const auto& root : roots.exact) descend(s, p, q, k, root.value, root.multiplicity, ctx);
      if (!roots.floating.empty()) {
        if (ctx.exact_only) {
          for (const auto& root : roots.floating) ctx.skipped += s.d * q * root.multiplicity;
        } else {
          State<Cplx> fs = to_float(s);
          for (const auto& root : roots.floating) descend(fs, p, q, k, root.value, root.multiplicity, ctx);
        }
      }
    } else {
      std::vector<Cplx> psi(static_cast<std::size_t>(len) + 1);
      for (int t = 0; t <= len; ++t) {
        int i = ia + q * t;
        int o = oa - p * t;
        const auto& ai = s.a[static_cast<std::size_t>(i)];
        if (o >= 0 && static_cast<std::size_t>(o) < ai.size()) psi[static_cast<std::size_t>(t)] = ai[static_cast<std::size_t>(o)];
      }
      for (const auto& root : roots_of(psi)) descend(s, p, q, k, root.value, root.multiplicity, ctx);
    }
  }
}

// ---- residual certification ----

template <class F>
std::vector<F> series_mul(const std::vector<F>& a, const std::vector<F>& b, std::size_t len) {
  std::vector<F> out(len, F(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
      if (!is_zero(b[j])) out[i + j] = out[i + j] + a[i] * b[j];
    }
  }
  return out;
}

/// P(scale tau^d, W(tau)) through tau^(len-1).
template <class F>
std::vector<F> residual(const std::vector<std::vector<F>>& b, const F& scale, int d,
                        const std::vector<F>& w, std::size_t len) {
  const std::size_t l = b.size();
  std::vector<F> wpow(len, F(0));
  wpow[0] = F(1);
  std::vector<F> out(len, F(0));
  for (std::size_t j = 0; j <= l; ++j) {
    if (j == l) {
      for (std::size_t m = 0; m < len; ++m) out[m] = out[m] + wpow[m];
      break;
    }
    F sc(1);
    for (std::size_t o = 0; o < b[j].size(); ++o, sc = sc * scale) {
      std::size_t shift = o * static_cast<std::size_t>(d);
      if (shift >= len) break;
      if (is_zero(b[j][o])) continue;
      F c = b[j][o] * sc;
      for (std::size_t m = 0; m + shift < len; ++m) {
        if (!is_zero(wpow[m])) out[m + shift] = out[m + shift] + c * wpow[m];
      }
    }
    wpow = series_mul(wpow, w, len);
  }
  return out;
}

}  // namespace

PuiseuxResult newton_puiseux(const WeierstrassPoly& p, int n, bool exact_only) {
  if (p.base_vars() != 1) fail(ErrorKind::dimension, "Newton-Puiseux needs exactly one base variable");
  if (n < 1) fail(ErrorKind::invalid_input, "requested order must be positive");
  const int l = p.degree();
  Context ctx{n, std::max(2, l) * (n + 4), exact_only, {}, {}, 0};

  State<Coef> s;
  for (int j = 0; j < l; ++j) {
    const TruncSeries& b = p.coeff(j);
    int prec = std::min(b.precision(), ctx.cap);
    std::vector<Coef> v(static_cast<std::size_t>(prec) + 1);
    for (const auto& [m, c] : b.terms()) {
      if (m.total() <= prec) v[static_cast<std::size_t>(m.total())] = c;
    }
    s.a.push_back(std::move(v));
  }
  std::vector<Coef> lead(static_cast<std::size_t>(ctx.cap) + 1);
  lead[0] = Coef(1);
  s.a.push_back(std::move(lead));
  s.W.assign(1, Coef());
  solve(s, l, ctx);

  // Input coefficients as dense vectors for the residual checks.
  std::vector<std::vector<Coef>> bx;
  int bprec = INT_MAX / 4;
  for (int j = 0; j < l; ++j) {
    const TruncSeries& b = p.coeff(j);
    bprec = std::min(bprec, b.precision());
    std::vector<Coef> v(static_cast<std::size_t>(std::min(b.precision(), ctx.cap * 4)) + 1);
    for (const auto& [m, c] : b.terms()) {
      if (static_cast<std::size_t>(m.total()) < v.size()) v[static_cast<std::size_t>(m.total())] = c;
    }
    bx.push_back(std::move(v));
  }

  PuiseuxResult out;
  out.skipped_roots = ctx.skipped;
  for (auto& raw : ctx.exact) {
    PuiseuxBranch br;
    br.ramification = raw.d;
    br.multiplicity = raw.mult;
    br.scale = raw.scale;
    br.precision = raw.precision;
    br.w = UniSeries(raw.W, raw.precision);
    int known = std::min(mul_precision(raw.d, bprec + 1) - 1, std::max(raw.precision, n) + 1);
    auto res = residual(bx, raw.scale, raw.d, raw.W, static_cast<std::size_t>(known) + 1);
    auto o = order_of(res);
    br.residual = o ? Order{*o, false} : Order{known + 1, true};
    out.branches.push_back(std::move(br));
  }
  std::vector<std::vector<Cplx>> bf;
  for (const auto& v : bx) {
    std::vector<Cplx> f;
    for (const auto& c : v) f.push_back(c.to_complex());
    bf.push_back(std::move(f));
  }
  for (auto& raw : ctx.floating) {
    PuiseuxBranch br;
    br.exact = false;
    br.ramification = raw.d;
    br.multiplicity = raw.mult;
    br.scale_f = raw.scale;
    br.precision = raw.precision;
    br.w_f = raw.W;
    br.tolerance = kZeroTol;
    int known = std::min(mul_precision(raw.d, bprec + 1) - 1, std::max(raw.precision, n) + 1);
    auto res = residual(bf, raw.scale, raw.d, raw.W, static_cast<std::size_t>(known) + 1);
    auto o = order_of(res);
    br.residual = o ? Order{*o, false} : Order{known + 1, true};
    for (int m = 0; m < n && m < static_cast<int>(res.size()); ++m) {
      br.residual_max = std::max(br.residual_max, std::abs(res[static_cast<std::size_t>(m)]));
    }
    out.branches.push_back(std::move(br));
  }
  return out;
}

FormalCurve branch_curve(const PuiseuxBranch& b, const std::vector<long>& direction) {
  if (!b.exact) fail(ErrorKind::invalid_input, "floating branches do not define an exact curve");
  int prec = b.w.precision();
  std::vector<UniSeries> comps;
  for (long v : direction) {
    UniSeries x(prec);
    if (b.ramification <= prec) x[b.ramification] = b.scale * Coef(v);
    comps.push_back(std::move(x));
  }
  comps.push_back(b.w);
  return FormalCurve(std::move(comps));
}

}  // namespace germforge
