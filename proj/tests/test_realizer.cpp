#include <doctest.h>

#include <random>
#include <vector>

#include "orbitforge/error.hpp"
#include "orbitforge/realizer.hpp"

using namespace orbitforge;

namespace {

constexpr Precision kPrec = 256;

BigComplex cpx(double re, double im = 0.0) { return BigComplex(re, im, kPrec); }

PeriodicOrbitSpec spec_from(const std::vector<BigComplex>& w,
                            std::size_t reentry) {
  PeriodicOrbitSpec spec;
  spec.w = w;
  spec.reentry_index = reentry;
  spec.validate();
  return spec;
}

// Independent oracle: Newton divided-difference interpolation through
// (nodes[i], values[i]), expanded to monomial coefficients with plain loops.
std::vector<BigComplex> newton_coeffs(const std::vector<BigComplex>& nodes,
                                      const std::vector<BigComplex>& values) {
  const std::size_t m = nodes.size();
  std::vector<BigComplex> dd = values;
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);

  std::vector<BigComplex> out(m, BigComplex::zero(kPrec));
  std::vector<BigComplex> basis{BigComplex(1.0, 0.0, kPrec)};
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t t = 0; t < basis.size(); ++t)
      out[t] = out[t] + dd[j] * basis[t];
    // basis *= (z - nodes[j])
    std::vector<BigComplex> next(basis.size() + 1, BigComplex::zero(kPrec));
    for (std::size_t t = 0; t < basis.size(); ++t) {
      next[t + 1] = next[t + 1] + basis[t];
      next[t] = next[t] - nodes[j] * basis[t];
    }
    basis = std::move(next);
  }
  return out;
}

BigFloat tiny() { return BigFloat::pow2(-(kPrec - 16), kPrec); }

}  // namespace

TEST_CASE("two-cycle with zero base collapses to 1 - z") {
  PeriodicOrbitSpec spec = spec_from({cpx(0), cpx(1), cpx(0)}, 0);
  Realizer f = build_periodic_realizer(spec, BaseFunction::zero(kPrec), kPrec);
  REQUIRE(f.expanded());
  REQUIRE(f.coefficients().size() == 2);
  CHECK(distance(f.coefficients()[0], cpx(1)).is_zero());
  CHECK(distance(f.coefficients()[1], cpx(-1)).is_zero());
  CHECK(distance(f.eval(cpx(0)), cpx(1)) < tiny());
  CHECK(distance(f.eval(cpx(1)), cpx(0)) < tiny());
}

TEST_CASE("fixed point with zero base is the constant map") {
  BigComplex c = cpx(0.7, -0.3);
  PeriodicOrbitSpec spec = spec_from({c, c}, 0);
  Realizer f = build_periodic_realizer(spec, BaseFunction::zero(kPrec), kPrec);
  CHECK(f.degree() == 0);
  CHECK(distance(f.eval(cpx(12.0, 5.0)), c) < tiny());
}

TEST_CASE("three-cycle matches the independent interpolation oracle") {
  PeriodicOrbitSpec spec = spec_from({cpx(0), cpx(1), cpx(2), cpx(0)}, 0);
  Realizer f = build_periodic_realizer(spec, BaseFunction::zero(kPrec), kPrec);
  std::vector<BigComplex> expected =
      newton_coeffs({cpx(0), cpx(1), cpx(2)}, {cpx(1), cpx(2), cpx(0)});
  REQUIRE(f.coefficients().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    CHECK(distance(f.coefficients()[i], expected[i]) < tiny());
}

TEST_CASE("family member with unit slope expands as expected") {
  PeriodicOrbitSpec spec = spec_from({cpx(0), cpx(1), cpx(0)}, 0);
  Realizer f = realizer_family_member(spec, cpx(1), kPrec);
  // (1 - z) + 2 z (z - 1) has coefficients 1, -3, 2.
  REQUIRE(f.coefficients().size() == 3);
  CHECK(distance(f.coefficients()[0], cpx(1)) < tiny());
  CHECK(distance(f.coefficients()[1], cpx(-3)) < tiny());
  CHECK(distance(f.coefficients()[2], cpx(2)) < tiny());
  CHECK(distance(f.eval(cpx(0)), cpx(1)) < tiny());
  CHECK(distance(f.eval(cpx(1)), cpx(0)) < tiny());
}

TEST_CASE("family structure: difference is c (n+1) times the node product") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<BigComplex> w;
    const std::size_t n_nodes = 2 + trial % 4;
    for (std::size_t i = 0; i < n_nodes; ++i) {
      bool ok = false;
      while (!ok) {
        BigComplex candidate = cpx(coord(rng), coord(rng));
        ok = true;
        for (const auto& prev : w)
          if (distance(prev, candidate) < BigFloat(1e-2, kPrec)) ok = false;
        if (ok) w.push_back(candidate);
      }
    }
    w.push_back(w[trial % n_nodes]);
    PeriodicOrbitSpec spec = spec_from(w, trial % n_nodes);

    BigComplex c1 = cpx(coord(rng), coord(rng));
    BigComplex c2 = cpx(coord(rng), coord(rng));
    Realizer f1 = realizer_family_member(spec, c1, kPrec);
    Realizer f2 = realizer_family_member(spec, c2, kPrec);

    // Every node is a root of the difference, and the scaled difference of
    // distinct members reproduces (c1 - c2)(n+1) P coefficientwise.
    const std::size_t n = spec.node_count() - 1;
    Polynomial node_product = Polynomial::from_roots(
        std::vector<BigComplex>(w.begin(), w.begin() + n_nodes), kPrec);
    BigComplex scale =
        (c1 - c2) * BigComplex(static_cast<double>(n + 1), 0.0, kPrec);
    Polynomial expected = scale * node_product;

    const auto& a1 = f1.coefficients();
    const auto& a2 = f2.coefficients();
    const auto& ex = expected.coefficients();
    REQUIRE(a1.size() == a2.size());
    REQUIRE(a1.size() == ex.size());
    bool distinct = false;
    for (std::size_t i = 0; i < a1.size(); ++i) {
      BigComplex diff = a1[i] - a2[i];
      CHECK(diff.abs() <= ex[i].abs() + BigFloat(1.0, kPrec) * tiny());
      CHECK(distance(diff, ex[i]) < BigFloat(1e-60, kPrec));
      if (!distance(a1[i], a2[i]).is_zero()) distinct = true;
    }
    CHECK(distinct);
    for (std::size_t k = 0; k < n_nodes; ++k) {
      CHECK(distance(f1.eval(w[k]), f2.eval(w[k])) < BigFloat(1e-60, kPrec));
    }
  }
}

TEST_CASE("interpolation property holds for random polynomial bases") {
  std::mt19937_64 rng(99021);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BigComplex> w;
    const std::size_t n_nodes = 2 + trial % 5;
    while (w.size() < n_nodes) {
      BigComplex candidate = cpx(coord(rng), coord(rng));
      bool ok = true;
      for (const auto& prev : w)
        if (distance(prev, candidate) < BigFloat(1e-2, kPrec)) ok = false;
      if (ok) w.push_back(candidate);
    }
    w.push_back(w[0]);
    PeriodicOrbitSpec spec = spec_from(w, 0);

    std::vector<BigComplex> base_coeffs;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) base_coeffs.push_back(cpx(coord(rng), coord(rng)));
    BaseFunction base = BaseFunction::polynomial(base_coeffs);

    Realizer f = build_periodic_realizer(spec, base, kPrec);
    CHECK(f.degree() <= spec.node_count() - 1 + base.degree());
    for (std::size_t k = 0; k < n_nodes; ++k) {
      CHECK(distance(f.eval(w[k]), w[k + 1]) <= tiny());
    }
  }
}

TEST_CASE("transcendental base yields a closed-form evaluator that realizes") {
  PeriodicOrbitSpec spec = spec_from({cpx(0), cpx(1), cpx(2), cpx(0)}, 0);
  Realizer f = build_periodic_realizer(
      spec, BaseFunction::exponential_shift(cpx(0.5, 0.25)), kPrec);
  CHECK_FALSE(f.expanded());
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(distance(f.eval(spec.w[k]), spec.w[k + 1]) < tiny());
  CHECK_THROWS_AS(f.coefficients(), Error);
}

TEST_CASE("repeated nodes are rejected") {
  PeriodicOrbitSpec spec;
  spec.w = {cpx(0), cpx(0), cpx(0)};
  spec.reentry_index = 0;
  CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("iteration reproduces the expected orbits") {
  PeriodicOrbitSpec flip = spec_from({cpx(0), cpx(1), cpx(0)}, 0);
  Realizer f = build_periodic_realizer(flip, BaseFunction::zero(kPrec), kPrec);
  IterationResult orbit = iterate(f, cpx(0), 3);
  CHECK_FALSE(orbit.overflow);
  REQUIRE(orbit.seq.size() == 4);
  CHECK(distance(orbit.seq.at(2), cpx(0)) < tiny());
  CHECK(distance(orbit.seq.at(3), cpx(1)) < tiny());

  BigComplex c = cpx(-2.5, 0.5);
  PeriodicOrbitSpec fixed = spec_from({c, c}, 0);
  Realizer constant = build_periodic_realizer(fixed, BaseFunction::zero(kPrec), kPrec);
  IterationResult seq = iterate(constant, cpx(9), 2);
  REQUIRE(seq.seq.size() == 3);
  CHECK(distance(seq.seq.at(1), c) < tiny());
  CHECK(distance(seq.seq.at(2), c) < tiny());
}

TEST_CASE("squaring via a degree-2 realizer and overflow marking") {
  // Realize z^2 on the fixed point 0 with base z^2: sum reduces to F - F(0).
  PeriodicOrbitSpec origin = spec_from({cpx(0), cpx(0)}, 0);
  Realizer square = build_periodic_realizer(
      origin,
      BaseFunction::polynomial({cpx(0), cpx(0), cpx(1)}), kPrec);
  IterationResult orbit = iterate(square, cpx(0.5), 3);
  REQUIRE(orbit.seq.size() == 4);
  CHECK(distance(orbit.seq.at(1), cpx(0.25)) < tiny());
  CHECK(distance(orbit.seq.at(2), cpx(0.0625)) < tiny());
  CHECK(distance(orbit.seq.at(3), cpx(1.0 / 256)) < tiny());

  IterationResult blowup = iterate(square, cpx(2), 80);
  CHECK(blowup.overflow);
  CHECK(blowup.completed < 80);
  CHECK(blowup.seq.points.back().is_finite());
}

TEST_CASE("periodicity propagates along the iterated cycle") {
  // 3-cycle entered at index 1: w_3 = w_1.
  PeriodicOrbitSpec spec = spec_from({cpx(0.3), cpx(-0.4, 0.2), cpx(0.1, -0.6),
                                      cpx(-0.4, 0.2)},
                                     1);
  Realizer f = build_periodic_realizer(spec, BaseFunction::zero(kPrec), kPrec);
  IterationResult orbit = iterate(f, spec.w[0], 9);
  const std::size_t period = spec.node_count() - spec.reentry_index;  // 2
  for (std::size_t i = spec.reentry_index; i + period < orbit.seq.size(); ++i) {
    CHECK(distance(orbit.seq.at(i), orbit.seq.at(i + period)) <
          BigFloat(1e-60, kPrec));
  }
}

TEST_CASE("verification passes the realizer and rejects the broken head") {
  OrbitSequence broken;
  broken.precision_bits = kPrec;
  for (double v : {1.0, 0.5, 0.25, 0.0625}) broken.points.emplace_back(v, 0.0, kPrec);

  PeriodicOrbitSpec origin = spec_from({cpx(0), cpx(0)}, 0);
  Realizer square = build_periodic_realizer(
      origin, BaseFunction::polynomial({cpx(0), cpx(0), cpx(1)}), kPrec);
  ToleranceConfig tol = ToleranceConfig::for_precision(kPrec);
  RealizationCheck check = verify_realization(square, broken, tol);
  CHECK_FALSE(check.pass);
  REQUIRE(check.first_failure.has_value());
  CHECK(*check.first_failure == 0);

  OrbitSequence good;
  good.precision_bits = kPrec;
  for (double v : {0.5, 0.25, 0.0625, 1.0 / 256}) good.points.emplace_back(v, 0.0, kPrec);
  CHECK(verify_realization(square, good, tol).pass);
}

TEST_CASE("spec extraction from a periodic prefix") {
  OrbitSequence seq;
  seq.precision_bits = kPrec;
  for (double v : {0.0, 1.0, 0.0, 1.0}) seq.points.emplace_back(v, 0.0, kPrec);
  PeriodicOrbitSpec spec =
      PeriodicOrbitSpec::from_sequence(seq, ToleranceConfig::for_precision(kPrec));
  CHECK(spec.w.size() == 3);
  CHECK(spec.reentry_index == 0);
}
