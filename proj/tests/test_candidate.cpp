#include <doctest.h>

#include <cmath>
#include <vector>

#include "orbitforge/candidate.hpp"
#include "orbitforge/error.hpp"

using namespace orbitforge;

namespace {

OrbitSequence make_real_seq(const std::vector<double>& xs, Precision prec = 256) {
  OrbitSequence seq;
  seq.precision_bits = prec;
  for (double x : xs) seq.points.emplace_back(x, 0.0, prec);
  return seq;
}

ToleranceConfig tol256() { return ToleranceConfig::for_precision(256); }

}  // namespace

TEST_CASE("the classic impossible sequence fails with minimal witness") {
  OrbitSequence seq = make_real_seq({1, 2, 1, 3});
  ConsistencyReport report = check_candidate_consistency(seq, tol256());
  CHECK_FALSE(report.pass);
  REQUIRE(report.witness.has_value());
  CHECK(report.witness->p == 0);
  CHECK(report.witness->q == 2);
}

TEST_CASE("constant and alternating sequences are consistent") {
  CHECK(check_candidate_consistency(make_real_seq({0, 0, 0, 0}), tol256()).pass);
  CHECK(check_candidate_consistency(make_real_seq({0, 1, 0, 1, 0}), tol256()).pass);
}

TEST_CASE("witness is lexicographically minimal") {
  // Two violating recurrences; (0,2) must win over (1,3).
  OrbitSequence seq = make_real_seq({1, 5, 1, 5, 2, 9});
  ConsistencyReport report = check_candidate_consistency(seq, tol256());
  CHECK_FALSE(report.pass);
  CHECK(report.witness->p == 0);
  CHECK(report.witness->q == 2);
}

TEST_CASE("too-short sequences are rejected") {
  OrbitSequence seq;
  seq.precision_bits = 256;
  seq.points.emplace_back(1.0, 0.0, 256);
  CHECK_THROWS_AS(check_candidate_consistency(seq, tol256()), Error);
}

TEST_CASE("near-coincidences are flagged but never fail") {
  ToleranceConfig tol = tol256();
  tol.eq_tol = BigFloat(1e-12, 256);
  OrbitSequence seq = make_real_seq({0.3, 7.0, 0.3 + 5e-12, 9.0});
  ConsistencyReport report = check_candidate_consistency(seq, tol);
  CHECK(report.pass);
  CHECK(report.near_coincidences.size() == 1);
}

TEST_CASE("heuristic classification covers all four classes") {
  ToleranceConfig tol = tol256();
  tol.escape_radius = BigFloat(10.0, 64);

  OrbitClass periodic = classify_orbit(make_real_seq({0, 1, 0, 1}), tol);
  CHECK(periodic.tag == OrbitClassTag::Periodic);
  CHECK_FALSE(periodic.exact);

  std::vector<double> ramp;
  for (int i = 1; i <= 20; ++i) ramp.push_back(i);
  OrbitClass escaping = classify_orbit(make_real_seq(ramp), tol);
  CHECK(escaping.tag == OrbitClassTag::Escaping);
  CHECK_FALSE(escaping.exact);

  OrbitClass bounded = classify_orbit(make_real_seq({1, 2, 3, 2, 1, 2}), tol);
  CHECK(bounded.tag == OrbitClassTag::Bounded);

  // Leaves the radius but never sustains growth over the tail quarter.
  OrbitClass bungee =
      classify_orbit(make_real_seq({1, 50, 2, 40, 3, 30, 4, 20, 5, 15, 6, 11}), tol);
  CHECK(bungee.tag == OrbitClassTag::Bungee);
}

TEST_CASE("declared tails give exact classes") {
  ToleranceConfig tol = tol256();

  OrbitSequence decaying = make_real_seq({1, 0.5, 0.25, 0.0625, 1.0 / 256});
  decaying.tail.kind = TailInfo::Kind::TendsToZero;
  OrbitClass cls = classify_orbit(decaying, tol);
  CHECK(cls.tag == OrbitClassTag::Bounded);
  CHECK(cls.exact);

  OrbitSequence periodic = make_real_seq({4, 7, 4, 7});
  periodic.tail.kind = TailInfo::Kind::PeriodicFrom;
  periodic.tail.index = 0;
  periodic.tail.period = 2;
  cls = classify_orbit(periodic, tol);
  CHECK(cls.tag == OrbitClassTag::Periodic);
  CHECK(cls.exact);

  OrbitSequence escaping = make_real_seq({1, 2, 4});
  escaping.tail.kind = TailInfo::Kind::Escaping;
  cls = classify_orbit(escaping, tol);
  CHECK(cls.tag == OrbitClassTag::Escaping);
  CHECK(cls.exact);
}

TEST_CASE("classification refuses inconsistent input") {
  CHECK_THROWS_AS(classify_orbit(make_real_seq({1, 2, 1, 3}), tol256()), Error);
}

TEST_CASE("degree hint recovers the squaring exponent") {
  OrbitSequence seq;
  seq.precision_bits = 256;
  for (int n = 0; n <= 8; ++n)
    seq.points.push_back(BigComplex(pow_int(BigFloat(2.0, 256), 1L << n),
                                    BigFloat(0.0, 256)));
  DegreeHint hint = polynomial_degree_hint(seq);
  REQUIRE(hint.degree.has_value());
  CHECK(*hint.degree == 2);
  CHECK(hint.residual < 1e-12);
}

TEST_CASE("degree hint rejects non-integer growth with residual one half") {
  OrbitSequence seq;
  seq.precision_bits = 256;
  double e = 1.0;
  for (int n = 0; n <= 8; ++n) {
    seq.points.push_back(
        BigComplex(exp2(BigFloat(-e, 256)), BigFloat(0.0, 256)));
    e *= 1.5;
  }
  DegreeHint hint = polynomial_degree_hint(seq);
  CHECK_FALSE(hint.degree.has_value());
  CHECK(hint.residual == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("degree hint on a linear ramp drifts off integrality") {
  std::vector<double> xs;
  for (int n = 0; n <= 8; ++n) xs.push_back(n + 2);
  OrbitSequence seq = make_real_seq(xs);
  DegreeHint hint = polynomial_degree_hint(seq);
  CHECK_FALSE(hint.degree.has_value());

  // Independent oracle: ratios over the trailing half, directly.
  std::vector<double> r;
  for (int n = 3; n <= 7; ++n)
    r.push_back(std::log(double(n + 3)) / std::log(double(n + 2)));
  double mean = 0;
  for (double v : r) mean += v;
  mean /= r.size();
  CHECK(hint.mean == doctest::Approx(mean).epsilon(1e-9));
  CHECK(hint.residual == doctest::Approx(std::abs(mean - 1.0)).epsilon(1e-9));
}

TEST_CASE("degree hint property: c^(d^n) yields d for every prefix >= 6") {
  for (double c : {2.0, 0.5, 3.7, 0.1}) {
    for (long d : {2L, 3L, 4L}) {
      for (std::size_t len : {6u, 8u, 10u}) {
        OrbitSequence seq;
        seq.precision_bits = 512;
        BigFloat log2c =
            log(BigFloat(c, 512)) / BigFloat::ln2(512);
        BigFloat power(1.0, 512);
        for (std::size_t n = 0; n < len; ++n) {
          seq.points.push_back(
              BigComplex(exp2(power * log2c), BigFloat(0.0, 512)));
          power = power * BigFloat(static_cast<double>(d), 512);
        }
        DegreeHint hint = polynomial_degree_hint(seq);
        REQUIRE(hint.degree.has_value());
        CHECK(*hint.degree == d);
      }
    }
  }
}

TEST_CASE("degree hint errors on unit modulus in the window") {
  OrbitSequence seq = make_real_seq({4, 3, 1, 2, 5, 6});
  CHECK_THROWS_AS(polynomial_degree_hint(seq), Error);
}
