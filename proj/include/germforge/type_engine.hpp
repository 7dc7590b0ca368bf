#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "germforge/curve.hpp"
#include "germforge/hermitian.hpp"
#include "germforge/ideal.hpp"
#include "germforge/unitary.hpp"

namespace germforge {

/// nu(zeta^* r) / nu(zeta). A flagged numerator means zeta^* r vanishes
/// through the available precision and only the lower bound is known.
struct TypeRatio {
  Order numerator;
  int denominator = 1;
  Rational value;  // numerator.value / denominator (a lower bound when flagged)
  bool lower_bound() const { return numerator.lower_bound; }
};

TypeRatio dangelo_ratio(const HermitianForm& r, const FormalCurve& zeta);

struct WitnessResult {
  bool certified = false;
  int order_verified = 0;   // N when certified
  int first_degree = 0;     // total degree of the first surviving monomial
  Multidegree monomial;     // (a, b) for t^a tbar^b
  Coef coefficient;
};

/// Checks that jet_N(zeta^* r) vanishes coefficient-exactly.
WitnessResult witness_check(const HermitianForm& r, const FormalCurve& zeta, int n);

struct SearchOptions {
  int precision = 40;  // t-precision of the trial curves
  int max_rounds = 40;
  std::size_t threads = 0;  // 0: GERMFORGE_THREADS or hardware concurrency
};

struct SearchHit {
  std::vector<int> exponents;
  FormalCurve curve;
  TypeRatio ratio;
};

/// Greedy lowest-order cancellation over monomial curves
/// zeta_i = t^{a_i} (c_0 + ... + c_d t^d); best ratios first.
std::vector<SearchHit> monomial_curve_search(const HermitianForm& r, int max_exponent, int max_coeff_degree,
                                             const SearchOptions& options = {});

/// Ideal generated by h, the components of f - U g and of U^* f - g.
/// Needs an exact block covering every family.
IdealPresentation build_ideal(const Decomposition& d, const UnitaryBlock& u);

struct EquivalenceReport {
  bool holds = false;
  std::string failed;   // name of the first failing check
  int first_degree = 0; // total degree where it failed
};

/// Jet-level norm chain: zeta^* h = 0, |zeta^* f|^2 = |U zeta^* g|^2 = |zeta^* g|^2
/// = |U^* zeta^* f|^2 = |zeta^* f|^2 as (t, tbar) series through degree N.
EquivalenceReport equivalence_check(const Decomposition& d, const UnitaryBlock& u, const FormalCurve& zeta, int n);

/// Worker count from GERMFORGE_THREADS, else hardware concurrency.
std::size_t worker_count(std::size_t requested = 0);

}  // namespace germforge
