#include "orbitforge/qc_map.hpp"

#include <algorithm>

#include "orbitforge/error.hpp"

namespace orbitforge {

namespace {

// Principal-branch argument gap used by the annulus maps.
BigFloat angle_defect(const BigFloat& a0, const BigFloat& a1,
                      const BigFloat& a2) {
  return a1 + a1 - a0 - a2;
}

}  // namespace

nlohmann::json AnnulusMapParams::to_json() const {
  return {{"n", n},
          {"d", d.to_string()},
          {"d_prime", d_prime.to_string()},
          {"alpha", alpha.to_string()},
          {"mu_abs", mu_abs.to_string()},
          {"K", K.to_string()}};
}

std::pair<BigFloat, BigFloat> dilatation(const BigFloat& d,
                                         const BigFloat& d_prime,
                                         const BigFloat& alpha) {
  const Precision prec = std::max({d.precision(), d_prime.precision(),
                                   alpha.precision()});
  if (!(d > BigFloat(0.0, prec)) || !(d_prime > BigFloat(0.0, prec)))
    fail(Errc::out_of_range, "annulus widths must be positive");
  BigFloat one(1.0, prec);
  BigFloat g = d_prime / d;
  BigFloat t = alpha / d;
  BigFloat num = (g - one) * (g - one) + t * t;
  BigFloat den = (g + one) * (g + one) + t * t;
  BigFloat mu = sqrt(num / den);
  BigFloat K = (one + mu) / (one - mu);
  return {mu, K};
}

nlohmann::json QCHypotheses::to_json() const {
  return {{"params", params.to_json()}, {"D", D}};
}

nlohmann::json PiecewiseQCMap::to_json() const {
  nlohmann::json j;
  j["sequence"] = seq_.to_json();
  nlohmann::json ann = nlohmann::json::array();
  for (const auto& a : annuli_) ann.push_back(a.to_json());
  j["annuli"] = ann;
  auto [re, im] = outer_factor_.to_strings();
  j["outer_factor"] = {re, im};
  j["K_global"] = K_global_.to_string();
  j["K_bound"] = K_bound_ ? nlohmann::json(K_bound_->to_string())
                          : nlohmann::json(nullptr);
  j["hypotheses"] = hypotheses_ ? hypotheses_->to_json() : nlohmann::json(nullptr);
  return j;
}

PiecewiseQCMap build_qc_map(const OrbitSequence& seq,
                            const std::optional<QCHypotheses>& hyp) {
  seq.validate();
  if (seq.size() < 3)
    fail(Errc::sequence_too_short, "need at least 3 points for one annulus");

  const Precision prec = seq.precision_bits;
  const std::size_t len = seq.size();

  std::vector<BigFloat> mods, logs, args;
  mods.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    BigFloat m = seq.modulus(i);
    if (m.is_zero())
      fail(Errc::zero_modulus, "zero modulus at index " + std::to_string(i));
    mods.push_back(m);
    logs.push_back(log(mods.back()));
    args.push_back(seq.at(i).arg());
  }
  for (std::size_t i = 0; i + 1 < len; ++i) {
    if (!(mods[i + 1] < mods[i]))
      fail(Errc::non_decreasing_moduli,
           "moduli must strictly decrease; violation at index " +
               std::to_string(i));
  }

  if (hyp) {
    hyp->params.validate();
    if (!(hyp->D > 0.0) || !(hyp->D < 1.0))
      fail(Errc::hypothesis_violated, "D must lie in (0, 1)");
    BigFloat D(hyp->D, prec);
    for (std::size_t i = 0; i + 1 < len; ++i) {
      if (!(mods[i + 1] <= D * mods[i]))
        fail(Errc::hypothesis_violated,
             "contraction bound |z_{n+1}| <= D |z_n| fails at index " +
                 std::to_string(i));
    }
    QRConditionReport ratio = check_necessary(seq, hyp->params);
    if (!ratio.pass()) {
      const auto& w = ratio.witnesses.front();
      fail(Errc::hypothesis_violated,
           "ratio conditions fail at index " + std::to_string(w.n) + " (" +
               w.side + ")");
    }
  }

  PiecewiseQCMap map;
  map.seq_ = seq;
  map.hypotheses_ = hyp;
  map.outer_factor_ = seq.at(1) / seq.at(0);
  map.K_global_ = BigFloat(1.0, prec);

  for (std::size_t n = 0; n + 2 < len; ++n) {
    AnnulusMapParams a;
    a.n = n;
    a.d = logs[n] - logs[n + 1];
    a.d_prime = logs[n + 1] - logs[n + 2];
    a.alpha = angle_defect(args[n], args[n + 1], args[n + 2]);
    auto [mu, K] = dilatation(a.d, a.d_prime, a.alpha);
    a.mu_abs = mu;
    a.K = K;
    map.K_global_ = max(map.K_global_, a.K);
    map.annuli_.push_back(std::move(a));
  }

  map.moduli_.assign(mods.begin(), mods.begin() + (len - 1));

  if (hyp) {
    // Closed-form distortion bound from (mu, nu, C, D): an upper bound for
    // d'/d + d/d' + 16 pi^2 / (d d') on every annulus past n0, converted to
    // K via K + 1/K = bound.
    const BigFloat one(1.0, prec);
    BigFloat logD_inv = -log(BigFloat(hyp->D, prec));
    BigFloat log_C = BigFloat(hyp->params.log2_C, prec) * BigFloat::ln2(prec);
    BigFloat pi = BigFloat::pi(prec);
    BigFloat mu_p(hyp->params.mu, prec);
    BigFloat nu_p(hyp->params.nu, prec);
    BigFloat L = one / mu_p + nu_p +
                 (BigFloat(2.0, prec) + BigFloat(2.0, prec) / mu_p) *
                     (log_C / logD_inv) +
                 BigFloat(16.0, prec) * pi * pi / (logD_inv * logD_inv);
    L = max(L, BigFloat(2.0, prec));
    map.K_bound_ = (L + sqrt(L * L - BigFloat(4.0, prec))) / BigFloat(2.0, prec);
  }
  return map;
}

BigComplex PiecewiseQCMap::evaluate(const BigComplex& z) const {
  const Precision prec = precision();
  if (!z.is_finite()) fail(Errc::out_of_range, "non-finite input point");
  if (z.is_zero()) return BigComplex::zero(prec);

  BigFloat m = z.abs();
  if (m > moduli_[0]) return outer_factor_ * z;
  if (!(m > moduli_.back()))
    fail(Errc::out_of_range,
         "point below the innermost constructed annulus (|z| <= " +
             moduli_.back().to_string() + "); extend the sequence prefix");

  // Annulus n holds |z_{n+1}| < |z| <= |z_n|; moduli_ is decreasing, so we
  // want the last n with m <= moduli_[n].
  std::size_t lo = 0, hi = moduli_.size() - 1;  // invariant: m <= moduli_[lo]
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (m <= moduli_[mid]) lo = mid;
    else hi = mid - 1;
  }
  const AnnulusMapParams& a = annuli_[lo];

  BigComplex q = z / seq_.at(lo + 1);
  BigFloat x = log(q.abs());
  BigFloat y = q.arg();
  BigFloat X = (a.d_prime / a.d) * x;
  BigFloat Y = y + (a.alpha / a.d) * x;
  return seq_.at(lo + 2) * exp(BigComplex(X, Y));
}

nlohmann::json MapCheck::to_json() const {
  nlohmann::json j;
  j["verdict"] = pass ? "pass" : "fail";
  j["max_residual"] = max_residual.to_string();
  j["checked"] = checked;
  j["first_failure"] =
      first_failure ? nlohmann::json(*first_failure) : nlohmann::json(nullptr);
  return j;
}

MapCheck verify_orbit_realization(const PiecewiseQCMap& map,
                                  const BigFloat& rel_tol) {
  const OrbitSequence& seq = map.sequence();
  MapCheck check;
  check.max_residual = BigFloat(0.0, map.precision());
  for (std::size_t n = 0; n + 2 < seq.size(); ++n) {
    BigFloat residual =
        distance(map.evaluate(seq.at(n)), seq.at(n + 1)) / seq.modulus(n + 1);
    check.max_residual = max(check.max_residual, residual);
    ++check.checked;
    if (residual > rel_tol && check.pass) {
      check.pass = false;
      check.first_failure = n;
    }
  }
  return check;
}

MapCheck verify_circle_identity(const PiecewiseQCMap& map, std::size_t samples,
                                const BigFloat& rel_tol) {
  const OrbitSequence& seq = map.sequence();
  const Precision prec = map.precision();
  const BigFloat two_pi = BigFloat(2.0, prec) * BigFloat::pi(prec);
  MapCheck check;
  check.max_residual = BigFloat(0.0, prec);
  for (std::size_t n = 0; n + 2 < seq.size(); ++n) {
    for (std::size_t k = 0; k < samples; ++k) {
      BigFloat beta = two_pi * BigFloat(static_cast<double>(k) + 0.5, prec) /
                      BigFloat(static_cast<double>(samples), prec) -
                      BigFloat::pi(prec);
      BigComplex rot = exp(BigComplex(BigFloat(0.0, prec), beta));
      BigComplex image = map.evaluate(seq.at(n) * rot);
      BigFloat residual =
          distance(image, seq.at(n + 1) * rot) / seq.modulus(n + 1);
      check.max_residual = max(check.max_residual, residual);
      ++check.checked;
      if (residual > rel_tol && check.pass) {
        check.pass = false;
        check.first_failure = n;
      }
    }
  }
  return check;
}

nlohmann::json SeamCheck::to_json() const {
  nlohmann::json j;
  j["verdict"] = pass ? "pass" : "fail";
  j["max_discrepancy"] = max_discrepancy.to_string();
  j["samples"] = samples;
  return j;
}

SeamCheck verify_boundary_continuity(const PiecewiseQCMap& map, std::size_t n,
                                     std::size_t samples, const BigFloat& tol) {
  const OrbitSequence& seq = map.sequence();
  if (n + 3 >= seq.size())
    fail(Errc::out_of_range, "no annulus below seam index " + std::to_string(n));

  const Precision prec = map.precision();
  const BigFloat two_pi = BigFloat(2.0, prec) * BigFloat::pi(prec);
  const BigFloat radius = seq.modulus(n + 1);
  SeamCheck check;
  check.max_discrepancy = BigFloat(0.0, prec);
  check.samples = samples;

  for (std::size_t k = 0; k < samples; ++k) {
    BigFloat gamma = two_pi * BigFloat(static_cast<double>(k) + 0.5, prec) /
                     BigFloat(static_cast<double>(samples), prec) -
                     BigFloat::pi(prec);
    BigComplex point =
        BigComplex(radius * cos(gamma), radius * sin(gamma));

    // Limit of the annulus-n formula as x -> 0+: z_{n+2} e^{i arg(z/z_{n+1})}.
    BigComplex q = point / seq.at(n + 1);
    BigFloat y = q.arg();
    BigComplex from_above =
        seq.at(n + 2) * exp(BigComplex(BigFloat(0.0, prec), y));

    // The seam itself belongs to annulus n+1 (x = d there).
    BigComplex from_below = map.evaluate(point);

    BigFloat gap = distance(from_above, from_below) / seq.modulus(n + 2);
    check.max_discrepancy = max(check.max_discrepancy, gap);
    if (gap > tol) check.pass = false;
  }
  return check;
}

bool periodicity_audit(const AnnulusMapParams& params, Precision prec) {
  const BigFloat two_pi = BigFloat(2.0, prec) * BigFloat::pi(prec);
  const BigFloat guard = BigFloat::pow2(8 - static_cast<long>(prec), prec);
  auto phi = [&](const BigFloat& x, const BigFloat& y) {
    return BigComplex((params.d_prime / params.d) * x,
                      y + (params.alpha / params.d) * x);
  };
  const double xs[] = {0.25, 0.5, 0.75};
  const double ys[] = {-2.0, 1.0471975511965976, 3.0};
  for (double fx : xs) {
    for (double fy : ys) {
      BigFloat x = params.d * BigFloat(fx, prec);
      BigFloat y(fy, prec);
      BigComplex lhs = phi(x, y + two_pi);
      BigComplex rhs = phi(x, y) + BigComplex(BigFloat(0.0, prec), two_pi);
      if (distance(lhs, rhs) > guard * (BigFloat(1.0, prec) + rhs.abs()))
        return false;
    }
  }
  return true;
}

std::pair<BigFloat, BigFloat> modulus_bounds(const PiecewiseQCMap& map,
                                             const BigFloat& r,
                                             std::size_t samples) {
  const Precision prec = map.precision();
  if (!(r > BigFloat(0.0, prec)) || !(r <= map.sequence().modulus(0)))
    fail(Errc::out_of_range, "radius outside (0, |z_0|]");
  if (!(r > map.inner_radius()))
    fail(Errc::out_of_range, "radius below the constructed annuli");

  const BigFloat two_pi = BigFloat(2.0, prec) * BigFloat::pi(prec);
  BigFloat lo, hi;
  bool first = true;
  for (std::size_t k = 0; k < samples; ++k) {
    BigFloat beta = two_pi * BigFloat(static_cast<double>(k) + 0.5, prec) /
                    BigFloat(static_cast<double>(samples), prec) -
                    BigFloat::pi(prec);
    BigComplex point(r * cos(beta), r * sin(beta));
    BigFloat m = map.evaluate(point).abs();
    if (first) {
      lo = m;
      hi = m;
      first = false;
    } else {
      lo = min(lo, m);
      hi = max(hi, m);
    }
  }
  return {lo, hi};
}

nlohmann::json DilatationReport::to_json() const {
  nlohmann::json j;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& a : per_annulus) per.push_back(a.to_json());
  j["per_annulus"] = per;
  j["sup_mu"] = sup_mu.to_string();
  j["K_global"] = K_global.to_string();
  j["K_bound"] = K_bound ? nlohmann::json(K_bound->to_string())
                         : nlohmann::json(nullptr);
  j["max_theta_prime"] = max_theta_prime
                             ? nlohmann::json(max_theta_prime->to_string())
                             : nlohmann::json(nullptr);
  j["bound_ok"] = bound_ok;
  return j;
}

DilatationReport dilatation_report(const PiecewiseQCMap& map) {
  DilatationReport report;
  const Precision prec = map.precision();
  report.per_annulus = map.annuli();
  report.sup_mu = BigFloat(0.0, prec);
  report.K_global = map.K_global();
  report.K_bound = map.K_bound();
  BigFloat theta(0.0, prec);
  const std::size_t n0 = map.hypotheses() ? map.hypotheses()->params.n0 : 0;
  for (const auto& a : map.annuli()) {
    report.sup_mu = max(report.sup_mu, a.mu_abs);
    theta = max(theta, abs(a.alpha) / a.d);
    if (report.K_bound && a.n >= n0 && a.K > *report.K_bound)
      report.bound_ok = false;
  }
  report.max_theta_prime = theta;
  return report;
}

}  // namespace orbitforge
