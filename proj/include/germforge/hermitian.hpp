#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "germforge/curve.hpp"
#include "germforge/series.hpp"

namespace germforge {

/// Real-valued series r(z, zbar) = sum c_JK z^J zbar^K with c_KJ = conj(c_JK).
///
/// Stored as a series in 2n variables (z_1..z_n, zbar_1..zbar_n); both
/// (J,K) and (K,J) are kept so that arithmetic and pullbacks stay direct.
class HermitianForm {
 public:
  HermitianForm() = default;
  HermitianForm(std::size_t nvars, int precision);
  /// Wraps a 2n-variable series; throws a reality error if c_KJ != conj(c_JK).
  static HermitianForm from_series(std::size_t nvars, TruncSeries s);

  std::size_t nvars() const { return n_; }
  int precision() const { return s_.precision(); }
  const TruncSeries& series() const { return s_; }
  bool is_zero() const { return s_.is_zero(); }

  Coef coeff(const Multidegree& j, const Multidegree& k) const;
  /// Adds c z^J zbar^K together with its conjugate partner (once when J == K,
  /// where c must be real).
  void add_real_term(const Multidegree& j, const Multidegree& k, const Coef& c);

  HermitianForm jet(int k) const;
  void check_reality() const;

  friend bool operator==(const HermitianForm& a, const HermitianForm& b) {
    return a.n_ == b.n_ && a.s_ == b.s_;
  }
  friend HermitianForm operator+(const HermitianForm& a, const HermitianForm& b);
  friend HermitianForm operator-(const HermitianForm& a, const HermitianForm& b);

 private:
  std::size_t n_ = 0;
  TruncSeries s_;
};

Multidegree pair_index(const Multidegree& j, const Multidegree& k);
std::pair<Multidegree, Multidegree> split_index(const Multidegree& jk);

/// f(z) viewed as a function of (z, zbar).
TruncSeries holomorphic_lift(const TruncSeries& f);
/// conj(f)(zbar) viewed as a function of (z, zbar).
TruncSeries antiholomorphic_lift(const TruncSeries& f);
/// |f|^2 = f(z) * conj(f(z)).
HermitianForm abs_squared(const TruncSeries& f);
/// 2 Re h = h + conj(h).
HermitianForm two_re(const TruncSeries& h);

struct Family {
  Multidegree index;  // J
  TruncSeries f;      // z^J + sum_{K >= J} conj(a_JK) z^K
  TruncSeries g;      // z^J - sum_{K >= J} conj(a_JK) z^K
};

/// r ~ 2 Re h + sum_J |f_J|^2 - sum_J |g_J|^2 at a fixed truncation level.
struct Decomposition {
  std::size_t nvars = 0;
  int precision = 0;
  TruncSeries h;
  std::vector<Family> families;  // ascending in J, only families with some a_JK != 0
};

Decomposition decompose(const HermitianForm& r, int k);
HermitianForm reconstruct(const Decomposition& d, int k);

/// r(zeta(t), conj(zeta(t))) as a series in (t, tbar): variable 0 is t and
/// variable 1 is tbar. Exact through min(N_r * nu, N_zeta), capped by max_degree.
TruncSeries pullback(const HermitianForm& r, const FormalCurve& zeta,
                     std::optional<int> max_degree = std::nullopt);

}  // namespace germforge
