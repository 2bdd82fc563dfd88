#include <doctest.h>

#include "orbitforge/bigcomplex.hpp"
#include "orbitforge/error.hpp"

using namespace orbitforge;

TEST_CASE("decimal strings round-trip at the parsing precision") {
  const char* samples[] = {"0.5",     "-1.25",       "3.141592653589793",
                           "1e-100",  "-7.5e300",    "0",
                           "2.2250738585072014e-308"};
  for (const char* s : samples) {
    BigFloat x = BigFloat::from_string(s, 256);
    BigFloat y = BigFloat::from_string(x.to_string(), 256);
    CHECK(x == y);
  }
}

TEST_CASE("round-trip survives very high precision and tiny exponents") {
  BigFloat x = BigFloat::pow2(-100000, 131072) + BigFloat::pow2(-16, 131072);
  BigFloat y = BigFloat::from_string(x.to_string(), 131072);
  CHECK(x == y);
}

TEST_CASE("parse rejects junk") {
  CHECK_THROWS_AS(BigFloat::from_string("1.5x", 64), Error);
  CHECK_THROWS_AS(BigFloat::from_string("", 64), Error);
  CHECK_THROWS_AS(BigFloat::from_string("--3", 64), Error);
}

TEST_CASE("arithmetic joins operand precisions") {
  BigFloat a(1.0, 64);
  BigFloat b(1.0, 256);
  CHECK((a + b).precision() == 256);
}

TEST_CASE("exact powers of two at extreme exponents") {
  BigFloat tiny = BigFloat::pow2(-1000000, 64);
  CHECK(!tiny.is_zero());
  CHECK(tiny > BigFloat(0.0, 64));
  CHECK(tiny < BigFloat::pow2(-999999, 64));
}

TEST_CASE("principal argument lands in (-pi, pi]") {
  Precision p = 128;
  BigComplex neg(-1.0, 0.0, p);
  CHECK(neg.arg() == BigFloat::pi(p));

  BigComplex neg_signed_zero(BigFloat(-1.0, p),
                             BigFloat(0.0, p) * BigFloat(-1.0, p));
  CHECK(neg_signed_zero.arg() == BigFloat::pi(p));

  BigComplex below(0.0, -1.0, p);
  CHECK(below.arg() < BigFloat(0.0, p));
}

TEST_CASE("complex exp and division agree with known values") {
  Precision p = 256;
  BigComplex i(0.0, 1.0, p);
  BigComplex z = exp(BigComplex(BigFloat(0.0, p), BigFloat::pi(p)));
  CHECK(distance(z, BigComplex(-1.0, 0.0, p)) < BigFloat::pow2(-250, p));

  BigComplex q = BigComplex(1.0, 1.0, p) / BigComplex(0.0, 1.0, p);
  CHECK(distance(q, BigComplex(1.0, -1.0, p)) < BigFloat::pow2(-250, p));
  CHECK(distance(i * i, BigComplex(-1.0, 0.0, p)).is_zero());
}
