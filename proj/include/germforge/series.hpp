#pragma once

#include <climits>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "germforge/coef.hpp"
#include "germforge/multidegree.hpp"

namespace germforge {

/// Multivariate formal power series in z_1..z_n, known exactly up to total
/// degree `precision`. Coefficients above the precision are unknown, never
/// zero. Zero coefficients are never stored.
class TruncSeries {
 public:
  using Terms = std::map<Multidegree, Coef>;

  TruncSeries() = default;
  TruncSeries(std::size_t nvars, int precision);

  static TruncSeries constant(std::size_t nvars, int precision, const Coef& c);
  static TruncSeries variable(std::size_t nvars, int precision, std::size_t i);
  static TruncSeries monomial(std::size_t nvars, int precision, const Multidegree& j,
                              const Coef& c = Coef(1));

  std::size_t nvars() const { return nvars_; }
  int precision() const { return precision_; }
  const Terms& terms() const { return terms_; }

  Coef coeff(const Multidegree& j) const;
  /// Adds c to the coefficient of z^J; terms above the precision are dropped.
  void add_term(const Multidegree& j, const Coef& c);
  void set_term(const Multidegree& j, const Coef& c);

  bool is_zero() const { return terms_.empty(); }
  Coef constant_term() const;
  /// Lowest total degree carrying a nonzero coefficient; empty when the
  /// series vanishes to its precision.
  std::optional<int> order() const;
  /// Highest total degree with a nonzero coefficient (-1 for zero).
  int degree() const;

  /// k-jet: terms of degree <= k. Throws a precision error when k > precision.
  TruncSeries jet(int k) const;
  /// Lowers the precision to min(precision, k) without the precondition check.
  TruncSeries truncated(int k) const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  TruncSeries& operator*=(const Coef& c);
  TruncSeries operator-() const;

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const Coef& c) { return a *= c; }
  friend TruncSeries operator*(const Coef& c, TruncSeries a) { return a *= c; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  /// Multiplicative inverse of a unit (nonzero constant term).
  TruncSeries inverse() const;
  TruncSeries pow(int e) const;
  /// Coefficientwise conjugate.
  TruncSeries conj() const;

 private:
  std::size_t nvars_ = 0;
  int precision_ = 0;
  Terms terms_;
};

/// Coefficient-exact agreement of a and b on all degrees <= k.
bool agree_to(const TruncSeries& a, const TruncSeries& b, int k);

/// Substitutes subs[i] for z_i. Every substitute must vanish at the origin
/// unless s is a polynomial within its precision. Result precision is the
/// conservative bound min(N_s * nu, min N_subs) where nu is the least order
/// of the substitutes.
TruncSeries compose(const TruncSeries& s, const std::vector<TruncSeries>& subs);

/// Re-embeds a series into a ring with more variables; variable i goes to
/// position map[i].
TruncSeries embed(const TruncSeries& s, std::size_t nvars, const std::vector<std::size_t>& map);

/// Saturating product used for precision bookkeeping.
int mul_precision(int a, int b);

}  // namespace germforge
