#include "germforge/coef.hpp"

#include <cmath>
#include <ostream>

#include "germforge/error.hpp"

namespace germforge {

Coef& Coef::operator+=(const Coef& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Coef& Coef::operator-=(const Coef& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Coef& Coef::operator*=(const Coef& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Coef Coef::inverse() const {
  if (is_zero()) fail(ErrorKind::invalid_input, "division by zero coefficient");
  Rational n = norm2();
  return Coef(re_ / n, -im_ / n);
}

Coef& Coef::operator/=(const Coef& o) {
  if (o.is_real() && sgn(o.re_) != 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

Coef pow(const Coef& c, long e) {
  if (e < 0) return pow(c.inverse(), -e);
  Coef result(1);
  Coef base = c;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::string to_string(const Coef& c) {
  if (c.is_real()) return c.re().get_str();
  std::string s = "(";
  if (sgn(c.re()) != 0) s += c.re().get_str();
  const Rational& im = c.im();
  if (sgn(im) > 0 && sgn(c.re()) != 0) s += "+";
  if (im == 1) {
    s += "i";
  } else if (im == -1) {
    s += "-i";
  } else {
    s += im.get_str() + "i";
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const Coef& c) { return os << to_string(c); }

bool exact_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return false;
  }
  root = Rational(sqrt(num), sqrt(den));
  root.canonicalize();
  return true;
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) fail(ErrorKind::invalid_input, "cannot rationalize a non-finite value");
  // Convergents h/k of the continued fraction of x.
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(rest);
    if (std::fabs(a) > 1e15) break;
    mpz_class ai(static_cast<long>(a));
    mpz_class h2 = ai * h1 + h0;
    mpz_class k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = rest - a;
    if (std::fabs(frac) < 1e-15) break;
    rest = 1.0 / frac;
  }
  if (k1 == 0) return Rational(0);
  Rational r(h1, k1);
  r.canonicalize();
  return r;
}

}  // namespace germforge
