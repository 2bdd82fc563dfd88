#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>

namespace orbitforge {

using Precision = mpfr_prec_t;

/// Arbitrary-precision binary floating-point value (MPFR-backed).
///
/// Every value carries its own precision in bits; binary operations round
/// to the larger of the two operand precisions, nearest-even. Decimal
/// string output uses the minimal digit count that reads back to the same
/// bits at the same precision, so serialized values round-trip exactly.
class BigFloat {
 public:
  BigFloat();  // NaN at 64 bits
  explicit BigFloat(Precision prec);
  BigFloat(double value, Precision prec);
  BigFloat(long value, Precision prec);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  /// Parses a decimal string ("1.25e-10", "0.5", ...) at the given
  /// precision. Throws Errc::parse_error on trailing junk or empty input.
  static BigFloat from_string(std::string_view text, Precision prec);

  /// Exact power of two, 2^exponent.
  static BigFloat pow2(long exponent, Precision prec);
  static BigFloat pi(Precision prec);
  static BigFloat ln2(Precision prec);

  Precision precision() const { return mpfr_get_prec(v_); }
  BigFloat at_precision(Precision prec) const;

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const;  // rounds to nearest
  std::string to_string() const;

  BigFloat operator-() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);

  friend bool operator<(const BigFloat& a, const BigFloat& b);
  friend bool operator<=(const BigFloat& a, const BigFloat& b);
  friend bool operator>(const BigFloat& a, const BigFloat& b);
  friend bool operator>=(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, const BigFloat& b);
  friend bool operator!=(const BigFloat& a, const BigFloat& b);

  friend BigFloat abs(const BigFloat& x);
  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat exp(const BigFloat& x);
  friend BigFloat exp2(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat sin(const BigFloat& x);
  friend BigFloat cos(const BigFloat& x);
  friend void sin_cos(BigFloat& s, BigFloat& c, const BigFloat& x);
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x);
  friend BigFloat hypot(const BigFloat& x, const BigFloat& y);
  friend BigFloat pow_int(const BigFloat& x, long k);
  friend BigFloat pow(const BigFloat& x, const BigFloat& y);
  friend BigFloat round_nearest(const BigFloat& x);
  friend BigFloat max(const BigFloat& a, const BigFloat& b);
  friend BigFloat min(const BigFloat& a, const BigFloat& b);

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  mpfr_t v_;
};

BigFloat operator+(const BigFloat& a, double b);
BigFloat operator-(const BigFloat& a, double b);
BigFloat operator*(const BigFloat& a, double b);
BigFloat operator/(const BigFloat& a, double b);
BigFloat operator*(double a, const BigFloat& b);

}  // namespace orbitforge
