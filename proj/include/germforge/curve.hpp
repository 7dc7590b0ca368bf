#pragma once

#include <optional>
#include <vector>

#include "germforge/coef.hpp"
#include "germforge/series.hpp"

namespace germforge {

/// Dense univariate series in t known through t^precision.
class UniSeries {
 public:
  UniSeries() = default;
  explicit UniSeries(int precision);
  UniSeries(std::vector<Coef> coeffs, int precision);

  static UniSeries monomial(int precision, int e, const Coef& c = Coef(1));

  int precision() const { return static_cast<int>(c_.size()) - 1; }
  const Coef& operator[](int m) const { return c_[static_cast<std::size_t>(m)]; }
  Coef& operator[](int m) { return c_[static_cast<std::size_t>(m)]; }
  const std::vector<Coef>& coeffs() const { return c_; }

  std::optional<int> order() const;
  bool is_zero() const { return !order().has_value(); }
  UniSeries truncated(int k) const;

  UniSeries& operator+=(const UniSeries& o);
  UniSeries& operator-=(const UniSeries& o);
  UniSeries& operator*=(const Coef& c);
  friend UniSeries operator+(UniSeries a, const UniSeries& b) { return a += b; }
  friend UniSeries operator-(UniSeries a, const UniSeries& b) { return a -= b; }
  friend UniSeries operator*(UniSeries a, const Coef& c) { return a *= c; }
  friend UniSeries operator*(const UniSeries& a, const UniSeries& b);
  friend bool operator==(const UniSeries& a, const UniSeries& b) { return a.c_ == b.c_; }

  UniSeries pow(int e) const;
  /// Series quotient a / b. The quotient is known to
  /// min(prec_a, prec_b) - ord(b); requires ord(a) >= ord(b).
  friend UniSeries divide(const UniSeries& a, const UniSeries& b);

  TruncSeries to_trunc() const;
  static UniSeries from_trunc(const TruncSeries& s);

 private:
  std::vector<Coef> c_;
};

/// Result of an order computation: either the exact order or only the lower
/// bound "vanishes through precision", i.e. order >= value.
struct Order {
  int value = 0;
  bool lower_bound = false;

  friend bool operator==(const Order&, const Order&) = default;
};

/// Formal curve germ t -> (zeta_1(t), ..., zeta_n(t)) with zeta(0) = 0.
class FormalCurve {
 public:
  FormalCurve() = default;
  explicit FormalCurve(std::vector<UniSeries> components);

  std::size_t dim() const { return comps_.size(); }
  const UniSeries& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<UniSeries>& components() const { return comps_; }
  int precision() const;

  friend bool operator==(const FormalCurve& a, const FormalCurve& b) {
    return a.comps_ == b.comps_;
  }

 private:
  std::vector<UniSeries> comps_;
};

/// nu(zeta): least vanishing order over the components, or ">= N+1".
Order vanishing_order(const FormalCurve& zeta);

/// (s o zeta)(t), exact through min(N_s * nu, N_zeta), further capped by
/// max_degree when given. Refuses curves that vanish to their precision.
UniSeries pullback(const TruncSeries& s, const FormalCurve& zeta,
                   std::optional<int> max_degree = std::nullopt);

/// Substitutes t -> t^m in every component.
FormalCurve reparametrize(const FormalCurve& zeta, int m);

}  // namespace germforge
