#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "germforge/coef.hpp"
#include "germforge/curve.hpp"
#include "germforge/hermitian.hpp"

namespace germforge {

/// k x k unitary block acting as the identity on every index >= k.
/// Entries are exact when `exact` is set, otherwise binary64 with the
/// recorded residual tolerance.
struct UnitaryBlock {
  std::size_t k = 0;
  bool exact = true;
  std::vector<Coef> entries;                   // row-major, exact mode
  std::vector<std::complex<double>> entries_f; // row-major, floating mode
  double tolerance = 0.0;

  static UnitaryBlock identity(std::size_t k);
  static UnitaryBlock from_exact(std::size_t k, std::vector<Coef> entries);

  Coef at(std::size_t i, std::size_t j) const { return entries[i * k + j]; }
  std::complex<double> at_f(std::size_t i, std::size_t j) const;

  UnitaryBlock adjoint() const;
  /// max |(U U^* - I)_ij|; exactly zero for exact unitary blocks.
  double unitarity_defect() const;
  bool is_exact_unitary() const;

  std::vector<Coef> apply(const std::vector<Coef>& x) const;
  std::vector<std::complex<double>> apply_f(const std::vector<std::complex<double>>& x) const;
};

/// Coefficient vectors indexed by family: vectors[m][J] = coefficient of t^m.
using JetVectors = std::vector<std::vector<Coef>>;

/// <x, y> = sum x_i conj(y_i).
Coef inner(const std::vector<Coef>& x, const std::vector<Coef>& y);

struct GramMismatch {
  std::size_t m = 0;
  std::size_t l = 0;
  Coef gram_f;  // <F_m, F_l>
  Coef gram_g;  // <G_m, G_l>
};

struct MatchResult {
  std::optional<UnitaryBlock> unitary;
  std::optional<GramMismatch> mismatch;
  double residual = 0.0;  // max_m |U G_m - F_m|
};

/// Finds U with U G_m = F_m for every m when the Gram matrices agree.
MatchResult match_unitary(const JetVectors& f, const JetVectors& g);

/// Jet vectors of zeta^* f_J and zeta^* g_J through t^m_max.
std::pair<JetVectors, JetVectors> jet_vectors(const Decomposition& d, const FormalCurve& zeta, int m_max);

}  // namespace germforge
