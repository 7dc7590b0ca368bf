#pragma once

#include <complex>
#include <vector>

#include "germforge/coef.hpp"
#include "germforge/curve.hpp"
#include "germforge/weierstrass_poly.hpp"

namespace germforge {

/// One root cluster of a bivariate Weierstrass polynomial P(t, w), given as
/// the formal curve tau -> (scale * tau^d, w(tau)).
struct PuiseuxBranch {
  int ramification = 1;
  int multiplicity = 1;
  bool exact = true;
  Coef scale{1};
  UniSeries w;  // exact mode
  std::complex<double> scale_f{1.0, 0.0};
  std::vector<std::complex<double>> w_f;  // floating mode, index = power of tau
  double tolerance = 0.0;                 // zero threshold used in floating mode
  int precision = 0;                      // w matches a true root through tau^precision
  Order residual;                         // ord of P(scale tau^d, w(tau))
  double residual_max = 0.0;              // floating: max |coef| below the requested order
};

struct PuiseuxResult {
  std::vector<PuiseuxBranch> branches;
  int skipped_roots = 0;  // roots dropped because they needed floating mode
};

/// Newton polygon iteration on P(t, w) (one base variable). Branch
/// multiplicities weighted by ramification add up to deg_w P, unless
/// exact_only dropped roots outside the Gaussian rationals.
PuiseuxResult newton_puiseux(const WeierstrassPoly& p, int n, bool exact_only = false);

/// Exact branch as a curve in k+1 coordinates: z = x(tau) * direction,
/// w = w(tau).
FormalCurve branch_curve(const PuiseuxBranch& b, const std::vector<long>& direction);

}  // namespace germforge
