#pragma once

#include <string>
#include <utility>

#include "orbitforge/bigfloat.hpp"

namespace orbitforge {

/// Complex number over BigFloat. arg() returns the principal value in
/// (-pi, pi]; a negative real with a signed-zero imaginary part maps to
/// +pi, never -pi.
class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(Precision prec) : re_(0.0, prec), im_(0.0, prec) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(double re, double im, Precision prec)
      : re_(re, prec), im_(im, prec) {}

  static BigComplex from_strings(std::string_view re, std::string_view im,
                                 Precision prec);
  static BigComplex zero(Precision prec) { return BigComplex(prec); }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  Precision precision() const;
  BigComplex at_precision(Precision prec) const;

  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  BigFloat abs() const { return hypot(re_, im_); }
  BigFloat norm2() const { return re_ * re_ + im_ * im_; }
  BigFloat arg() const;

  BigComplex conj() const { return BigComplex(re_, -im_); }
  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigFloat& a, const BigComplex& b);

  friend BigComplex exp(const BigComplex& z);
  friend BigComplex pow_int(const BigComplex& z, long k);

  /// Exact bitwise equality of both parts.
  bool same_value(const BigComplex& other) const;

  std::pair<std::string, std::string> to_strings() const;
  std::string to_string() const;  // "re+imi" display form

 private:
  BigFloat re_, im_;
};

BigFloat distance(const BigComplex& a, const BigComplex& b);

}  // namespace orbitforge
