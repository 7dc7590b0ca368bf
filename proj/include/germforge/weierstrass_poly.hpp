#pragma once

#include <cstddef>
#include <vector>

#include "germforge/series.hpp"

namespace germforge {

/// P = w^l + sum_{j<l} b_j(z_1..z_k) w^j with every b_j(0) = 0.
class WeierstrassPoly {
 public:
  WeierstrassPoly() = default;
  WeierstrassPoly(std::size_t base_vars, std::vector<TruncSeries> lower);

  /// Reads a series in k+1 variables (w = last variable) that is monic of
  /// its w-degree and has lower coefficients vanishing at the origin.
  static WeierstrassPoly from_series(const TruncSeries& p);

  std::size_t base_vars() const { return k_; }
  int degree() const { return static_cast<int>(b_.size()); }
  const TruncSeries& coeff(int j) const { return b_[static_cast<std::size_t>(j)]; }
  const std::vector<TruncSeries>& lower() const { return b_; }
  /// Total-degree precision of the polynomial viewed as a series in k+1 variables.
  int precision() const;

  TruncSeries to_series() const;

  friend bool operator==(const WeierstrassPoly& a, const WeierstrassPoly& b) {
    return a.k_ == b.k_ && a.b_ == b.b_;
  }

 private:
  std::size_t k_ = 0;
  std::vector<TruncSeries> b_;
};

/// Splits a series in k+1 variables by powers of the last variable.
std::vector<TruncSeries> split_by_last(const TruncSeries& f);

}  // namespace germforge
