#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "germforge/curve.hpp"
#include "germforge/ideal.hpp"
#include "germforge/series.hpp"
#include "germforge/weierstrass_poly.hpp"

namespace germforge {

struct DivisionResult {
  TruncSeries quotient;
  std::vector<TruncSeries> remainder;  // r_j(z) for w^j, j < l
  TruncSeries remainder_series() const;
};

/// f = q P + r with deg_w r < l. The quotient is returned to total degree N
/// when the inputs carry enough precision, otherwise to the best certified
/// degree; the remainder is at least as precise.
DivisionResult weierstrass_divide(const TruncSeries& f, const WeierstrassPoly& p, int n);

struct Preparation {
  TruncSeries unit;
  WeierstrassPoly poly;
};

/// Order of f(0, ..., 0, w) in the last variable, if it is visible within
/// the precision of f.
std::optional<int> regular_order(const TruncSeries& f);

/// f = unit * P. Throws not_regular when f(0, w) vanishes to its precision.
Preparation weierstrass_prepare(const TruncSeries& f, int n);

/// (-1)^{l(l-1)/2} Res(P, dP/dw) as a series in the base variables.
TruncSeries discriminant(const WeierstrassPoly& p);

struct Restriction {
  std::vector<long> direction;  // z = s * direction
  WeierstrassPoly poly;         // bivariate: base variable s
  TruncSeries discriminant;     // D(s * direction)
  int discriminant_order = 0;
};

Restriction generic_restrict(const WeierstrassPoly& p);

/// Builds the normal-form data: discriminant of p and q_j = D z_j - Q_j.
/// Each Q_j lives in z_1..z_{k+1}; relation indices are 0-based.
NormalForm make_normal_form(std::size_t nvars, const WeierstrassPoly& p,
                            const std::vector<std::pair<std::size_t, TruncSeries>>& numerators);

struct LiftResult {
  FormalCurve curve;
  int discriminant_order = 0;  // ord of D along the base curve
  Order certified;             // least vanishing order of p and every q_j on the curve
};

/// zeta_j = (Q_j o zeta') / (D o zeta') for every relation.
LiftResult prime_curve_lift(const NormalForm& nf, const FormalCurve& base, int n);

struct AssociatedMembership {
  int nu = 0;
  std::vector<Cofactor> combination;
};

/// Smallest nu <= maxnu with D^nu f in (p, q_j) + M_0^{N+1}.
std::optional<AssociatedMembership> associated_membership(const TruncSeries& f, const NormalForm& nf,
                                                          int maxnu, int n);

}  // namespace germforge
