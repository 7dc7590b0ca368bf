#pragma once

#include <complex>
#include <gmpxx.h>
#include <iosfwd>
#include <string>

namespace germforge {

using Rational = mpq_class;

/// Exact Gaussian rational a + b i.
class Coef {
 public:
  Coef() = default;
  Coef(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Coef(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Coef(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Coef imag_unit() { return Coef(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Coef conj() const { return Coef(re_, -im_); }
  /// |c|^2, always exact.
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  Coef inverse() const;
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  Coef& operator+=(const Coef& o);
  Coef& operator-=(const Coef& o);
  Coef& operator*=(const Coef& o);
  Coef& operator/=(const Coef& o);

  friend Coef operator+(Coef a, const Coef& b) { return a += b; }
  friend Coef operator-(Coef a, const Coef& b) { return a -= b; }
  friend Coef operator*(Coef a, const Coef& b) { return a *= b; }
  friend Coef operator/(Coef a, const Coef& b) { return a /= b; }
  friend Coef operator-(const Coef& a) { return Coef(-a.re_, -a.im_); }
  friend bool operator==(const Coef& a, const Coef& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Coef& a, const Coef& b) { return !(a == b); }

 private:
  Rational re_{0};
  Rational im_{0};
};

Coef pow(const Coef& c, long e);

/// Canonical literal: `3/4`, `(1/2i)`, `(3/4+1/2i)`, `(-i)`.
std::string to_string(const Coef& c);
std::ostream& operator<<(std::ostream& os, const Coef& c);

/// Exact square root of a non-negative rational when it is a perfect square.
bool exact_sqrt(const Rational& q, Rational& root);

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double x, long max_den);

}  // namespace germforge
