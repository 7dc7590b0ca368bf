#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace germforge {

/// Exponent vector J = (J_1, ..., J_n) of a monomial z^J.
///
/// Ordered degree-first: J < K iff |J| < |K|, or |J| == |K| and J_i < K_i at
/// the first index where they differ. So (0,1) < (1,0) and (1,0,1) < (1,1,0).
class Multidegree {
 public:
  Multidegree() = default;
  explicit Multidegree(std::size_t n) : e_(n, 0) {}
  explicit Multidegree(std::vector<int> exponents);
  Multidegree(std::initializer_list<int> exponents);

  static Multidegree unit(std::size_t n, std::size_t i, int power = 1);

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, int v);
  int total() const { return total_; }
  bool is_zero() const { return total_ == 0; }
  const std::vector<int>& exponents() const { return e_; }

  /// Monomial product z^J * z^K.
  friend Multidegree operator+(const Multidegree& a, const Multidegree& b);
  /// True when z^b divides z^a.
  friend bool divides(const Multidegree& b, const Multidegree& a);
  friend Multidegree operator-(const Multidegree& a, const Multidegree& b);

  friend bool operator==(const Multidegree& a, const Multidegree& b) { return a.e_ == b.e_; }
  /// Graded order; operands of different length compare by length first so
  /// that the type is usable as a map key. Use compare() for checked use.
  friend std::strong_ordering operator<=>(const Multidegree& a, const Multidegree& b);

 private:
  std::vector<int> e_;
  int total_ = 0;
};

/// Checked graded comparison; throws a dimension error on length mismatch.
std::strong_ordering compare(const Multidegree& a, const Multidegree& b);

/// All exponent vectors of total degree exactly d in n variables, ascending.
std::vector<Multidegree> monomials_of_degree(std::size_t n, int d);
/// All exponent vectors of total degree <= d, ascending.
std::vector<Multidegree> monomials_up_to(std::size_t n, int d);

std::string to_string(const Multidegree& j);

}  // namespace germforge
