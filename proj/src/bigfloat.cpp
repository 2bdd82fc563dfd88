#include "orbitforge/bigfloat.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>

#include "orbitforge/error.hpp"

namespace orbitforge {

namespace {

Precision join_prec(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse_error: return "parse_error";
    case Errc::invalid_sequence: return "invalid_sequence";
    case Errc::sequence_too_short: return "sequence_too_short";
    case Errc::repeated_node: return "repeated_node";
    case Errc::unit_modulus: return "unit_modulus";
    case Errc::zero_modulus: return "zero_modulus";
    case Errc::precision_cap_exceeded: return "precision_cap_exceeded";
    case Errc::non_decreasing_moduli: return "non_decreasing_moduli";
    case Errc::hypothesis_violated: return "hypothesis_violated";
    case Errc::out_of_range: return "out_of_range";
    case Errc::empty_selection: return "empty_selection";
    case Errc::degenerate_data: return "degenerate_data";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

BigFloat::BigFloat() { mpfr_init2(v_, 64); }

BigFloat::BigFloat(Precision prec) { mpfr_init2(v_, prec); }

BigFloat::BigFloat(double value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(long value, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, 64);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_string(std::string_view text, Precision prec) {
  size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin == end) fail(Errc::parse_error, "empty numeric string");
  std::string buf(text.substr(begin, end - begin));

  BigFloat out(prec);
  char* tail = nullptr;
  mpfr_strtofr(out.v_, buf.c_str(), &tail, 10, MPFR_RNDN);
  if (tail == buf.c_str() || *tail != '\0')
    fail(Errc::parse_error, "malformed numeric string: '" + buf + "'");
  return out;
}

BigFloat BigFloat::pow2(long exponent, Precision prec) {
  BigFloat out(prec);
  mpfr_set_ui_2exp(out.v_, 1, exponent, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::pi(Precision prec) {
  BigFloat out(prec);
  mpfr_const_pi(out.v_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::ln2(Precision prec) {
  BigFloat out(prec);
  mpfr_const_log2(out.v_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::at_precision(Precision prec) const {
  BigFloat out(prec);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

long BigFloat::to_long() const {
  return mpfr_get_si(v_, MPFR_RNDN);
}

std::string BigFloat::to_string() const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";

  mpfr_exp_t exp10 = 0;
  char* digits = mpfr_get_str(nullptr, &exp10, 10, 0, v_, MPFR_RNDN);
  std::string body(digits);
  mpfr_free_str(digits);

  std::string sign_part;
  if (!body.empty() && body[0] == '-') {
    sign_part = "-";
    body.erase(body.begin());
  }
  // Trailing zeros never affect the value read back.
  size_t last = body.find_last_not_of('0');
  body.erase(last + 1);
  if (body.empty()) return "0";

  // mpfr convention: value = 0.<digits> * 10^exp10.
  std::string mantissa(1, body[0]);
  if (body.size() > 1) mantissa += "." + body.substr(1);
  return sign_part + mantissa + "e" + std::to_string(static_cast<long>(exp10 - 1));
}

BigFloat BigFloat::operator-() const {
  BigFloat out(precision());
  mpfr_neg(out.v_, v_, MPFR_RNDN);
  return out;
}

#define ORBITFORGE_BINOP(NAME, FUNC)                            \
  BigFloat NAME(const BigFloat& a, const BigFloat& b) {         \
    BigFloat out(join_prec(a, b));                              \
    FUNC(out.raw(), a.raw(), b.raw(), MPFR_RNDN);               \
    return out;                                                 \
  }

ORBITFORGE_BINOP(operator+, mpfr_add)
ORBITFORGE_BINOP(operator-, mpfr_sub)
ORBITFORGE_BINOP(operator*, mpfr_mul)
ORBITFORGE_BINOP(operator/, mpfr_div)
ORBITFORGE_BINOP(atan2, mpfr_atan2)
ORBITFORGE_BINOP(hypot, mpfr_hypot)
ORBITFORGE_BINOP(pow, mpfr_pow)

#undef ORBITFORGE_BINOP

bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

#define ORBITFORGE_UNOP(NAME, FUNC)            \
  BigFloat NAME(const BigFloat& x) {           \
    BigFloat out(x.precision());               \
    FUNC(out.raw(), x.raw(), MPFR_RNDN);       \
    return out;                                \
  }

ORBITFORGE_UNOP(abs, mpfr_abs)
ORBITFORGE_UNOP(sqrt, mpfr_sqrt)
ORBITFORGE_UNOP(exp, mpfr_exp)
ORBITFORGE_UNOP(exp2, mpfr_exp2)
ORBITFORGE_UNOP(log, mpfr_log)
ORBITFORGE_UNOP(sin, mpfr_sin)
ORBITFORGE_UNOP(cos, mpfr_cos)

#undef ORBITFORGE_UNOP

void sin_cos(BigFloat& s, BigFloat& c, const BigFloat& x) {
  mpfr_set_prec(s.raw(), x.precision());
  mpfr_set_prec(c.raw(), x.precision());
  mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

BigFloat pow_int(const BigFloat& x, long k) {
  BigFloat out(x.precision());
  mpfr_pow_si(out.raw(), x.raw(), k, MPFR_RNDN);
  return out;
}

BigFloat round_nearest(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_round(out.raw(), x.raw());
  return out;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }

BigFloat operator+(const BigFloat& a, double b) { return a + BigFloat(b, a.precision()); }
BigFloat operator-(const BigFloat& a, double b) { return a - BigFloat(b, a.precision()); }
BigFloat operator*(const BigFloat& a, double b) { return a * BigFloat(b, a.precision()); }
BigFloat operator/(const BigFloat& a, double b) { return a / BigFloat(b, a.precision()); }
BigFloat operator*(double a, const BigFloat& b) { return BigFloat(a, b.precision()) * b; }

}  // namespace orbitforge
