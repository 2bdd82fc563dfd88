#include "orbitforge/bigcomplex.hpp"

#include <algorithm>

namespace orbitforge {

BigComplex BigComplex::from_strings(std::string_view re, std::string_view im,
                                    Precision prec) {
  return BigComplex(BigFloat::from_string(re, prec),
                    BigFloat::from_string(im, prec));
}

Precision BigComplex::precision() const {
  return std::max(re_.precision(), im_.precision());
}

BigComplex BigComplex::at_precision(Precision prec) const {
  return BigComplex(re_.at_precision(prec), im_.at_precision(prec));
}

BigFloat BigComplex::arg() const {
  if (im_.is_zero() && re_.sign() < 0) {
    return BigFloat::pi(re_.precision());
  }
  return atan2(im_, re_);
}

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return BigComplex(a.re_ * b.re_ - a.im_ * b.im_,
                    a.re_ * b.im_ + a.im_ * b.re_);
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigFloat den = b.norm2();
  return BigComplex((a.re_ * b.re_ + a.im_ * b.im_) / den,
                    (a.im_ * b.re_ - a.re_ * b.im_) / den);
}

BigComplex operator*(const BigFloat& a, const BigComplex& b) {
  return BigComplex(a * b.re_, a * b.im_);
}

BigComplex exp(const BigComplex& z) {
  BigFloat radius = exp(z.re_);
  BigFloat s, c;
  sin_cos(s, c, z.im_);
  return BigComplex(radius * c, radius * s);
}

BigComplex pow_int(const BigComplex& z, long k) {
  BigComplex acc(1.0, 0.0, z.precision());
  BigComplex base = z;
  long n = k;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool BigComplex::same_value(const BigComplex& other) const {
  return re_ == other.re_ && im_ == other.im_;
}

std::pair<std::string, std::string> BigComplex::to_strings() const {
  return {re_.to_string(), im_.to_string()};
}

std::string BigComplex::to_string() const {
  std::string s = re_.to_string();
  std::string t = im_.to_string();
  if (!t.empty() && t[0] != '-') s += "+";
  return s + t + "i";
}

BigFloat distance(const BigComplex& a, const BigComplex& b) {
  return (a - b).abs();
}

}  // namespace orbitforge
