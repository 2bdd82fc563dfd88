#include "orbitforge/realizer.hpp"

#include <algorithm>

#include "orbitforge/error.hpp"

namespace orbitforge {

void PeriodicOrbitSpec::validate() const {
  if (w.size() < 2) fail(Errc::sequence_too_short, "spec needs w_0 and w_1");
  const std::size_t n = w.size() - 2;  // nodes are w_0..w_n
  if (reentry_index > n)
    fail(Errc::invalid_sequence, "re-entry index beyond the cycle nodes");
  for (std::size_t i = 0; i + 1 <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (w[i].same_value(w[j]))
        fail(Errc::repeated_node, "nodes " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
    }
  }
  if (!w[n + 1].same_value(w[reentry_index]))
    fail(Errc::invalid_sequence,
         "w_{n+1} must equal w_{reentry_index} exactly");
}

BigFloat PeriodicOrbitSpec::conditioning(Precision prec) const {
  const std::size_t nodes = node_count();
  BigFloat worst(prec);
  bool first = true;
  for (std::size_t k = 0; k < nodes; ++k) {
    BigFloat prod(1.0, prec);
    for (std::size_t j = 0; j < nodes; ++j) {
      if (j == k) continue;
      prod = prod * distance(w[k], w[j]);
    }
    if (first || prod < worst) {
      worst = prod;
      first = false;
    }
  }
  if (first) worst = BigFloat(1.0, prec);
  return worst;
}

PeriodicOrbitSpec PeriodicOrbitSpec::from_sequence(const OrbitSequence& seq,
                                                   const ToleranceConfig& tol) {
  seq.validate();
  const std::size_t len = seq.size();
  for (std::size_t q = 1; q < len; ++q) {
    for (std::size_t p = 0; p < q; ++p) {
      if (distance(seq.at(p), seq.at(q)) <= tol.eq_tol) {
        PeriodicOrbitSpec spec;
        spec.w.assign(seq.points.begin(), seq.points.begin() + q + 1);
        spec.w[q] = seq.at(p);  // snap the re-entry exactly
        spec.reentry_index = p;
        spec.validate();
        return spec;
      }
    }
  }
  fail(Errc::invalid_sequence, "no repeat found: sequence prefix is not periodic");
}

BaseFunction BaseFunction::zero(Precision prec) {
  return polynomial({BigComplex::zero(prec)});
}

BaseFunction BaseFunction::polynomial(std::vector<BigComplex> coeffs) {
  BaseFunction f;
  f.kind_ = Kind::Polynomial;
  f.poly_ = Polynomial(std::move(coeffs));
  return f;
}

BaseFunction BaseFunction::exponential_shift(BigComplex c) {
  BaseFunction f;
  f.kind_ = Kind::ExponentialShift;
  f.shift_ = std::move(c);
  return f;
}

std::size_t BaseFunction::degree() const {
  if (!is_polynomial()) fail(Errc::internal, "degree undefined for c*e^z");
  return poly_.degree();
}

BigComplex BaseFunction::eval(const BigComplex& z) const {
  if (kind_ == Kind::Polynomial) return poly_.eval(z);
  return shift_ * exp(z);
}

const std::vector<BigComplex>& Realizer::coefficients() const {
  if (!expanded_) fail(Errc::internal, "no expanded form for a transcendental realizer");
  return expanded_->coefficients();
}

std::size_t Realizer::degree() const {
  if (!expanded_) fail(Errc::internal, "no expanded form for a transcendental realizer");
  return expanded_->degree();
}

BigComplex Realizer::eval(const BigComplex& z) const {
  if (expanded_) return expanded_->eval(z);
  BigComplex acc = BigComplex::zero(prec_);
  for (std::size_t k = 0; k < node_factors_.size(); ++k) {
    BigComplex correction =
        base_.eval(z) - base_.eval(spec_.w[k]) + node_targets_[k];
    acc = acc + node_factors_[k].eval(z) * correction;
  }
  return acc;
}

Realizer build_periodic_realizer(const PeriodicOrbitSpec& spec,
                                 const BaseFunction& base, Precision prec) {
  spec.validate();
  const std::size_t nodes = spec.node_count();

  Realizer f;
  f.spec_ = spec;
  f.base_ = base;
  f.prec_ = prec;

  std::vector<BigComplex> w;
  w.reserve(spec.w.size());
  for (const auto& p : spec.w) w.push_back(p.at_precision(prec));
  std::vector<BigComplex> cycle(w.begin(), w.begin() + nodes);

  for (std::size_t k = 0; k < nodes; ++k) {
    BigComplex denom(1.0, 0.0, prec);
    for (std::size_t j = 0; j < nodes; ++j) {
      if (j == k) continue;
      denom = denom * (w[k] - w[j]);
    }
    f.node_factors_.push_back(Polynomial::from_roots(cycle, prec, k));
    f.node_targets_.push_back(w[k + 1] / denom);
  }

  if (base.is_polynomial()) {
    Polynomial sum = Polynomial::zero(prec);
    for (std::size_t k = 0; k < nodes; ++k) {
      Polynomial correction =
          base.poly() - Polynomial::constant(base.eval(w[k]) - f.node_targets_[k]);
      sum = sum + f.node_factors_[k] * correction;
    }
    f.expanded_ = sum.trimmed();
  }

  // Residual audit at the nodes: exact convolution at working precision can
  // still cancel catastrophically for clustered nodes.
  BigFloat worst(0.0, prec);
  for (std::size_t k = 0; k < nodes; ++k) {
    worst = max(worst, distance(f.eval(w[k]), w[k + 1]));
  }
  f.node_residual_ = worst;

  BigFloat cond = spec.conditioning(prec);
  if (cond < BigFloat(1e-8, prec)) {
    f.conditioning_warning_ = "near-coincident nodes: min node product " +
                              cond.to_string();
  }
  return f;
}

Realizer realizer_family_member(const PeriodicOrbitSpec& spec,
                                const BigComplex& c, Precision prec) {
  BigComplex zero = BigComplex::zero(prec);
  return build_periodic_realizer(
      spec, BaseFunction::polynomial({zero, c.at_precision(prec)}), prec);
}

IterationResult iterate(const Realizer& f, const BigComplex& z0,
                        std::size_t count) {
  if (count < 1) fail(Errc::out_of_range, "iteration count must be >= 1");
  IterationResult out;
  out.seq.precision_bits = f.working_precision();
  out.seq.points.push_back(z0.at_precision(f.working_precision()));
  for (std::size_t i = 0; i < count; ++i) {
    BigComplex next = f.eval(out.seq.points.back());
    if (!next.is_finite()) {
      out.overflow = true;
      break;
    }
    out.seq.points.push_back(next);
    ++out.completed;
  }
  return out;
}

nlohmann::json RealizationCheck::to_json() const {
  nlohmann::json j;
  j["verdict"] = pass ? "pass" : "fail";
  j["max_residual"] = max_residual.to_string();
  j["checked"] = checked;
  j["first_failure"] =
      first_failure ? nlohmann::json(*first_failure) : nlohmann::json(nullptr);
  return j;
}

RealizationCheck verify_realization(const Realizer& f, const OrbitSequence& seq,
                                    const ToleranceConfig& tol) {
  RealizationCheck check;
  check.max_residual = BigFloat(0.0, f.working_precision());
  const BigFloat one(1.0, f.working_precision());
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    BigFloat residual = distance(f.eval(seq.at(k)), seq.at(k + 1));
    check.max_residual = max(check.max_residual, residual);
    ++check.checked;
    if (residual > tol.rel_tol * (one + seq.at(k + 1).abs()) && check.pass) {
      check.pass = false;
      check.first_failure = k;
    }
  }
  return check;
}

}  // namespace orbitforge
