#include "germforge/unitary.hpp"

#include <algorithm>
#include <cmath>

#include "germforge/error.hpp"

namespace germforge {

namespace {

using Cplx = std::complex<double>;
using Vec = std::vector<Coef>;
using Mat = std::vector<Coef>;  // row-major k x k

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Coef& c) { return c.is_zero(); });
}

Mat identity_matrix(std::size_t k) {
  Mat m(k * k);
  for (std::size_t i = 0; i < k; ++i) m[i * k + i] = Coef(1);
  return m;
}

/// Left-multiplies by I + c v v^*.
void rank_one_update(Mat& u, std::size_t k, const Vec& v, const Coef& c) {
  for (std::size_t col = 0; col < k; ++col) {
    Coef dot;
    for (std::size_t i = 0; i < k; ++i) dot += v[i].conj() * u[i * k + col];
    if (dot.is_zero()) continue;
    Coef s = c * dot;
    for (std::size_t i = 0; i < k; ++i) u[i * k + col] += v[i] * s;
  }
}

Vec apply(const Mat& u, std::size_t k, const Vec& x) {
  Vec r(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) r[i] += u[i * k + j] * x[j];
  }
  return r;
}

/// When the G vectors span C^k the block is forced: U = F_S G_S^{-1} for
/// any k independent columns S. Gram agreement makes it unitary.
std::optional<Mat> spanning_match(const JetVectors& f, const JetVectors& g, std::size_t k) {
  // Rows [g_m | f_m] for independent g_m; reducing the left block to I
  // leaves U^T on the right.
  std::vector<Vec> rows;
  std::vector<Vec> reduced;  // echelon copy used for the independence test
  std::vector<std::size_t> pivots;
  for (std::size_t m = 0; m < g.size() && rows.size() < k; ++m) {
    Vec r = g[m];
    for (std::size_t b = 0; b < reduced.size(); ++b) {
      Coef c = r[pivots[b]];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < k; ++i) r[i] -= c * reduced[b][i];
    }
    std::size_t p = 0;
    while (p < k && r[p].is_zero()) ++p;
    if (p == k) continue;
    Coef inv = r[p].inverse();
    for (auto& x : r) x *= inv;
    for (auto& prev : reduced) {
      Coef c = prev[p];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < k; ++i) prev[i] -= c * r[i];
    }
    reduced.push_back(std::move(r));
    pivots.push_back(p);
    Vec row = g[m];
    row.insert(row.end(), f[m].begin(), f[m].end());
    rows.push_back(std::move(row));
  }
  if (rows.size() < k) return std::nullopt;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (rows[p][c].is_zero()) ++p;
    std::swap(rows[p], rows[c]);
    Coef inv = rows[c][c].inverse();
    for (auto& x : rows[c]) x *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || rows[i][c].is_zero()) continue;
      Coef s = rows[i][c];
      for (std::size_t j = 0; j < 2 * k; ++j) rows[i][j] -= s * rows[c][j];
    }
  }
  Mat u(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) u[i * k + j] = rows[j][k + i];
  }
  for (std::size_t m = 0; m < g.size(); ++m) {
    if (apply(u, k, g[m]) != f[m]) return std::nullopt;
  }
  return u;
}

/// Exact isometric extension through reflections and phase rotations. Fails
/// when a required phase is not a Gaussian rational.
std::optional<Mat> exact_match(const JetVectors& f, const JetVectors& g, std::size_t k) {
  Mat u = identity_matrix(k);
  std::vector<Vec> basis;  // orthogonal (unnormalized) basis of the processed F span
  std::vector<Rational> basis_norm;
  for (std::size_t m = 0; m < f.size(); ++m) {
    Vec x = apply(u, k, g[m]);
    const Vec& y = f[m];
    if (x != y) {
      // Parts orthogonal to the processed span; the parallel parts agree.
      Vec ux = x;
      Vec uy = y;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        Coef cx = inner(x, basis[b]) / Coef(basis_norm[b]);
        Coef cy = inner(y, basis[b]) / Coef(basis_norm[b]);
        for (std::size_t i = 0; i < k; ++i) {
          ux[i] -= cx * basis[b][i];
          uy[i] -= cy * basis[b][i];
        }
      }
      Coef c = inner(ux, uy);
      if (!c.is_real()) {
        Rational mod;
        if (!exact_sqrt(c.norm2(), mod)) return std::nullopt;
        // lambda = conj(c)/|c| rotates ux so that <lambda ux, uy> is real.
        Coef lambda = c.conj() / Coef(mod);
        Rational nn = inner(ux, ux).re();
        rank_one_update(u, k, ux, (lambda - Coef(1)) / Coef(nn));
        x = apply(u, k, g[m]);
      }
      if (x != y) {
        Vec v = sub(x, y);
        Rational vv = inner(v, v).re();
        rank_one_update(u, k, v, Coef(Rational(-2)) / Coef(vv));
        if (apply(u, k, g[m]) != y) return std::nullopt;
      }
    }
    Vec e = y;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Coef cb = inner(y, basis[b]) / Coef(basis_norm[b]);
      for (std::size_t i = 0; i < k; ++i) e[i] -= cb * basis[b][i];
    }
    if (!is_zero(e)) {
      basis_norm.push_back(inner(e, e).re());
      basis.push_back(std::move(e));
    }
  }
  return u;
}

using CVec = std::vector<Cplx>;

double norm(const CVec& v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return std::sqrt(s);
}

Cplx cinner(const CVec& x, const CVec& y) {
  Cplx s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
  return s;
}

/// Orthonormal completion: Gram-Schmidt over the given vectors, then the
/// standard basis.
std::vector<CVec> complete(std::vector<CVec> basis, std::size_t k) {
  for (std::size_t i = 0; i < k && basis.size() < k; ++i) {
    CVec e(k, 0.0);
    e[i] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        Cplx c = cinner(e, b);
        for (std::size_t j = 0; j < k; ++j) e[j] -= c * b[j];
      }
    }
    double nrm = norm(e);
    if (nrm < 1e-8) continue;
    for (auto& c : e) c /= nrm;
    basis.push_back(std::move(e));
  }
  return basis;
}

std::optional<std::vector<Cplx>> floating_match(const JetVectors& f, const JetVectors& g, std::size_t k) {
  double scale = 0;
  for (const auto& v : g) {
    for (const auto& c : v) scale = std::max(scale, std::abs(c.to_complex()));
  }
  if (scale == 0) scale = 1;
  // Gram-Schmidt on G, mirrored on F with the same coefficients.
  std::vector<CVec> qg;
  std::vector<CVec> qf;
  for (std::size_t m = 0; m < g.size(); ++m) {
    CVec vg(k);
    CVec vf(k);
    for (std::size_t i = 0; i < k; ++i) {
      vg[i] = g[m][i].to_complex();
      vf[i] = f[m][i].to_complex();
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t b = 0; b < qg.size(); ++b) {
        Cplx c = cinner(vg, qg[b]);
        for (std::size_t i = 0; i < k; ++i) {
          vg[i] -= c * qg[b][i];
          vf[i] -= c * qf[b][i];
        }
      }
    }
    double nrm = norm(vg);
    if (nrm < 1e-9 * scale) continue;
    for (std::size_t i = 0; i < k; ++i) {
      vg[i] /= nrm;
      vf[i] /= nrm;
    }
    qg.push_back(std::move(vg));
    qf.push_back(std::move(vf));
  }
  qg = complete(std::move(qg), k);
  qf = complete(std::move(qf), k);
  if (qg.size() != k || qf.size() != k) return std::nullopt;
  std::vector<Cplx> u(k * k, 0.0);
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) u[i * k + j] += qf[b][i] * std::conj(qg[b][j]);
    }
  }
  return u;
}

}  // namespace

UnitaryBlock UnitaryBlock::identity(std::size_t k) { return from_exact(k, identity_matrix(k)); }

UnitaryBlock UnitaryBlock::from_exact(std::size_t k, std::vector<Coef> entries) {
  if (entries.size() != k * k) fail(ErrorKind::dimension, "unitary block needs k*k entries");
  UnitaryBlock u;
  u.k = k;
  u.exact = true;
  u.entries = std::move(entries);
  return u;
}

std::complex<double> UnitaryBlock::at_f(std::size_t i, std::size_t j) const {
  return exact ? entries[i * k + j].to_complex() : entries_f[i * k + j];
}

UnitaryBlock UnitaryBlock::adjoint() const {
  UnitaryBlock a = *this;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (exact) {
        a.entries[j * k + i] = entries[i * k + j].conj();
      } else {
        a.entries_f[j * k + i] = std::conj(entries_f[i * k + j]);
      }
    }
  }
  return a;
}

bool UnitaryBlock::is_exact_unitary() const {
  if (!exact) return false;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Coef s;
      for (std::size_t l = 0; l < k; ++l) s += at(i, l) * at(j, l).conj();
      if (s != Coef(i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

double UnitaryBlock::unitarity_defect() const {
  if (exact) return is_exact_unitary() ? 0.0 : 1.0;
  double worst = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      std::complex<double> s = 0;
      for (std::size_t l = 0; l < k; ++l) s += at_f(i, l) * std::conj(at_f(j, l));
      worst = std::max(worst, std::abs(s - std::complex<double>(i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::vector<Coef> UnitaryBlock::apply(const std::vector<Coef>& x) const {
  if (!exact) fail(ErrorKind::invalid_input, "exact application of a floating unitary block");
  std::vector<Coef> r(x);
  for (std::size_t i = 0; i < k && i < x.size(); ++i) {
    Coef s;
    for (std::size_t j = 0; j < k && j < x.size(); ++j) s += at(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

std::vector<std::complex<double>> UnitaryBlock::apply_f(const std::vector<std::complex<double>>& x) const {
  std::vector<std::complex<double>> r(x);
  for (std::size_t i = 0; i < k && i < x.size(); ++i) {
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < k && j < x.size(); ++j) s += at_f(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

Coef inner(const std::vector<Coef>& x, const std::vector<Coef>& y) {
  if (x.size() != y.size()) fail(ErrorKind::dimension, "inner product of vectors of different length");
  Coef s;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i].conj();
  return s;
}

MatchResult match_unitary(const JetVectors& f, const JetVectors& g) {
  if (f.size() != g.size()) fail(ErrorKind::dimension, "F and G list different numbers of jet degrees");
  std::size_t k = 0;
  if (!f.empty()) k = f.front().size();
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (f[m].size() != k || g[m].size() != k) fail(ErrorKind::dimension, "jet vectors of different lengths");
  }
  MatchResult out;
  for (std::size_t m = 0; m < f.size(); ++m) {
    for (std::size_t l = m; l < f.size(); ++l) {
      Coef gf = inner(f[m], f[l]);
      Coef gg = inner(g[m], g[l]);
      if (gf != gg) {
        out.mismatch = GramMismatch{m, l, gf, gg};
        return out;
      }
    }
  }
  if (auto u = spanning_match(f, g, k)) {
    UnitaryBlock block = UnitaryBlock::from_exact(k, std::move(*u));
    if (block.is_exact_unitary()) {
      out.unitary = std::move(block);
      return out;
    }
  }
  if (auto u = exact_match(f, g, k)) {
    out.unitary = UnitaryBlock::from_exact(k, std::move(*u));
    return out;
  }
  auto uf = floating_match(f, g, k);
  if (!uf) fail(ErrorKind::degenerate, "orthonormal completion failed");
  UnitaryBlock u;
  u.k = k;
  u.exact = false;
  u.entries_f = std::move(*uf);
  double resid = 0;
  for (std::size_t m = 0; m < f.size(); ++m) {
    std::vector<std::complex<double>> x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = g[m][i].to_complex();
    auto y = u.apply_f(x);
    for (std::size_t i = 0; i < k; ++i) resid = std::max(resid, std::abs(y[i] - f[m][i].to_complex()));
  }
  u.tolerance = std::max(resid, u.unitarity_defect());
  out.residual = resid;
  out.unitary = std::move(u);
  return out;
}

std::pair<JetVectors, JetVectors> jet_vectors(const Decomposition& d, const FormalCurve& zeta, int m_max) {
  const std::size_t k = d.families.size();
  JetVectors f(static_cast<std::size_t>(m_max) + 1, std::vector<Coef>(k));
  JetVectors g = f;
  for (std::size_t j = 0; j < k; ++j) {
    UniSeries pf = pullback(d.families[j].f, zeta, m_max);
    UniSeries pg = pullback(d.families[j].g, zeta, m_max);
    if (pf.precision() < m_max || pg.precision() < m_max) {
      fail(ErrorKind::precision, "jet vectors requested through t^" + std::to_string(m_max) +
                                     " but the pullback is known only to t^" +
                                     std::to_string(std::min(pf.precision(), pg.precision())));
    }
    for (int m = 0; m <= m_max; ++m) {
      f[static_cast<std::size_t>(m)][j] = pf[m];
      g[static_cast<std::size_t>(m)][j] = pg[m];
    }
  }
  return {f, g};
}

}  // namespace germforge
