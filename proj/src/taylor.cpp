#include "orbitforge/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orbitforge/error.hpp"

namespace orbitforge {

namespace {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};

SlopeFit least_squares(const std::vector<double>& xs,
                       const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double den = n * sxx - sx * sx;
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

/// Polynomial extrapolation to zero through complex nodes (Newton form).
/// Returns the value at 0 and the magnitude of the final Newton term, the
/// natural convergence indicator.
std::pair<BigComplex, BigFloat> extrapolate_to_zero(
    const std::vector<BigComplex>& nodes, const std::vector<BigComplex>& values,
    Precision prec) {
  const std::size_t m = nodes.size();
  std::vector<BigComplex> dd = values;  // divided differences, in place
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
    }
  }
  BigComplex value = BigComplex::zero(prec);
  BigComplex basis(1.0, 0.0, prec);
  BigComplex last_term = BigComplex::zero(prec);
  for (std::size_t j = 0; j < m; ++j) {
    last_term = dd[j] * basis;
    value = value + last_term;
    basis = basis * (-nodes[j]);
  }
  return {value, last_term.abs()};
}

}  // namespace

AccumulationData AccumulationData::make(std::vector<BigComplex> nodes,
                                        std::vector<BigComplex> values,
                                        BigComplex zeta, BigComplex w) {
  if (nodes.size() != values.size())
    fail(Errc::degenerate_data, "node/value lists differ in length");
  if (nodes.size() < 4)
    fail(Errc::degenerate_data, "need at least 4 accumulation pairs");

  AccumulationData data;
  data.zeta = std::move(zeta);
  data.w = std::move(w);

  std::vector<std::size_t> idx(nodes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<BigFloat> dist;
  dist.reserve(nodes.size());
  for (const auto& z : nodes) {
    BigFloat d = distance(z, data.zeta);
    if (d.is_zero())
      fail(Errc::degenerate_data, "node equals the accumulation point");
    dist.push_back(d);
  }
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });

  for (std::size_t i : idx) {
    bool duplicate = false;
    for (std::size_t j = 0; j < data.nodes.size() && !duplicate; ++j) {
      if (data.nodes[j].same_value(nodes[i])) {
        if (!data.values[j].same_value(values[i]))
          fail(Errc::degenerate_data,
               "duplicate node with conflicting values in accumulation data");
        duplicate = true;
      }
    }
    if (!duplicate) {
      data.nodes.push_back(nodes[i]);
      data.values.push_back(values[i]);
    }
  }
  if (data.nodes.size() < 4)
    fail(Errc::degenerate_data, "fewer than 4 distinct accumulation pairs");
  return data;
}

AccumulationData AccumulationData::from_orbit(const OrbitSequence& seq,
                                              const BigComplex& zeta,
                                              const BigComplex& w) {
  seq.validate();
  std::vector<BigComplex> nodes, values;
  for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
    if (seq.at(n).same_value(zeta)) continue;  // nodes must differ from zeta
    nodes.push_back(seq.at(n));
    values.push_back(seq.at(n + 1));
  }
  return make(std::move(nodes), std::move(values), zeta, w);
}

AccumulationData AccumulationData::from_orbit_auto(const OrbitSequence& seq,
                                                   std::size_t window) {
  seq.validate();
  const std::size_t len = seq.size();
  const std::size_t w = std::min(window, len);
  const Precision prec = seq.precision_bits;

  BigComplex mean = BigComplex::zero(prec);
  for (std::size_t i = len - w; i < len; ++i) mean = mean + seq.at(i);
  mean = BigFloat(1.0 / static_cast<double>(w), prec) * mean;

  BigFloat spread(0.0, prec);
  BigFloat scale(0.0, prec);
  for (std::size_t i = len - w; i < len; ++i)
    spread = max(spread, distance(seq.at(i), mean));
  for (std::size_t i = 0; i < len; ++i) scale = max(scale, seq.modulus(i));
  if (!(spread <= scale * BigFloat(1.0 / 16.0, prec)))
    fail(Errc::degenerate_data,
         "tail has not settled; supply the accumulation point explicitly");

  // Fixed-point reading: successors of a settling tail settle at the same
  // point, so the value limit is the accumulation point itself.
  return from_orbit(seq, mean, mean);
}

nlohmann::json OrderEstimate::to_json() const {
  nlohmann::json j;
  j["p_real"] = p_real;
  j["p"] = p ? nlohmann::json(*p) : nlohmann::json(nullptr);
  j["integrality_residual"] = integrality_residual;
  j["identically_w"] = identically_w;
  j["no_limit"] = no_limit;
  if (!note.empty()) j["note"] = note;
  return j;
}

OrderEstimate estimate_order(const AccumulationData& data,
                             const ProbeConfig& cfg) {
  OrderEstimate out;
  const Precision prec = cfg.precision_bits;

  // Usable tail pairs: w_i != w, scanned from the accumulation end.
  std::vector<double> xs, ys;  // log|zeta_i - zeta|, log|w_i - w|
  std::size_t zero_values = 0;
  for (std::size_t i = data.size(); i-- > 0;) {
    BigFloat du = distance(data.values[i], data.w);
    if (du.is_zero()) {
      ++zero_values;
      continue;
    }
    BigFloat dx = distance(data.nodes[i], data.zeta);
    xs.push_back(log(dx.at_precision(prec)).to_double());
    ys.push_back(log(du.at_precision(prec)).to_double());
    if (xs.size() >= cfg.window + 1) break;
  }
  std::reverse(xs.begin(), xs.end());
  std::reverse(ys.begin(), ys.end());

  if (xs.empty()) {
    out.identically_w = true;
    out.note = "all tail values equal w; every coefficient vanishes";
    return out;
  }
  if (zero_values > 0) out.note = std::to_string(zero_values) + " pair(s) with w_i = w dropped";
  if (xs.size() < 3) {
    out.no_limit = true;
    out.note = "fewer than 3 usable tail pairs";
    return out;
  }

  const std::size_t w = std::min(cfg.window, xs.size());
  std::vector<double> tx(xs.end() - w, xs.end());
  std::vector<double> ty(ys.end() - w, ys.end());
  double s1 = least_squares(tx, ty).slope;

  double p_real = s1;
  if (xs.size() >= w + 1) {
    std::vector<double> px(xs.end() - w - 1, xs.end() - 1);
    std::vector<double> py(ys.end() - w - 1, ys.end() - 1);
    double s0 = least_squares(px, py).slope;
    double dx_mean = (tx.back() - tx.front()) / static_cast<double>(w - 1);
    double q = std::exp(dx_mean);  // geometric node factor, < 1 for decay
    if (q > 0.0 && q < 0.9) p_real = s1 + (s1 - s0) * q / (1.0 - q);
  }
  out.p_real = p_real;

  // Oscillation diagnostic from pointwise slopes.
  std::vector<double> local;
  for (std::size_t i = 0; i + 1 < tx.size(); ++i)
    local.push_back((ty[i + 1] - ty[i]) / (tx[i + 1] - tx[i]));
  double mean = 0;
  for (double d : local) mean += d;
  mean /= static_cast<double>(local.size());
  double var = 0;
  for (double d : local) var += (d - mean) * (d - mean);
  var /= static_cast<double>(local.size());
  if (std::sqrt(var) > std::max(0.25, 10.0 * cfg.conv_tol)) {
    out.no_limit = true;
    out.note = "log-ratio slopes oscillate; no limit detected";
    return out;
  }

  double rounded = std::round(p_real);
  out.integrality_residual = std::abs(p_real - rounded);
  if (out.integrality_residual < cfg.conv_tol && rounded >= 1.0) {
    out.p = static_cast<long>(rounded);
  } else if (rounded < 1.0) {
    out.note = "order limit below 1; not a valid leading order";
  }
  return out;
}

const char* coeff_status_name(CoeffStatus s) {
  switch (s) {
    case CoeffStatus::Converged: return "converged";
    case CoeffStatus::NotConverged: return "not-converged";
    case CoeffStatus::PrecisionLimited: return "precision-limited";
  }
  return "unknown";
}

nlohmann::json TaylorEstimate::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    auto [re, im] = coeffs[i].to_strings();
    arr.push_back({{"k", p + static_cast<long>(i)},
                   {"re", re},
                   {"im", im},
                   {"status", coeff_status_name(diagnostics[i].status)},
                   {"residual", diagnostics[i].residual}});
  }
  j["coefficients"] = arr;
  j["trustworthy"] = trustworthy;
  j["integrality_residual"] = integrality_residual;
  j["used_precision"] = static_cast<long>(used_precision);
  switch (radius_flag) {
    case RadiusFlag::Unset: j["radius"] = nullptr; break;
    case RadiusFlag::Zero: j["radius"] = "zero"; break;
    case RadiusFlag::Infinite: j["radius"] = "infinite"; break;
    case RadiusFlag::Finite: j["radius"] = radius.to_string(); break;
  }
  return j;
}

TaylorEstimate estimate_coefficients(const AccumulationData& data,
                                     const ProbeConfig& cfg,
                                     const OrderEstimate& order) {
  if (!order.p)
    fail(Errc::degenerate_data,
         "coefficient recovery requires an integer order estimate");
  const long p = *order.p;
  const Precision prec = cfg.precision_bits;

  TaylorEstimate est;
  est.p = p;
  est.integrality_residual = order.integrality_residual;
  est.zeta = data.zeta.at_precision(prec);
  est.w = data.w.at_precision(prec);
  est.used_precision = prec;

  // Differences taken at the operands' native precision, then carried at the
  // working precision; the window holds the pairs closest to zeta.
  const std::size_t w = std::min(cfg.window, data.size());
  std::vector<BigComplex> x, u;
  std::vector<BigFloat> u_abs;
  for (std::size_t i = data.size() - w; i < data.size(); ++i) {
    x.push_back((data.nodes[i] - data.zeta).at_precision(prec));
    u.push_back((data.values[i] - data.w).at_precision(prec));
    u_abs.push_back(u.back().abs());
  }

  const BigFloat floor_factor = BigFloat::pow2(32 - static_cast<long>(prec), prec);
  const std::size_t stages = cfg.max_coeffs + 1;

  for (std::size_t k = 0; k < stages; ++k) {
    const long power = p + static_cast<long>(k);

    // Partial-sum residual, smallest committed terms first.
    std::vector<BigComplex> residual(w);
    bool precision_limited = false;
    for (std::size_t i = 0; i < w; ++i) {
      BigComplex acc = BigComplex::zero(prec);
      for (std::size_t j = est.coeffs.size(); j-- > 0;) {
        acc = acc + est.coeffs[j] * pow_int(x[i], p + static_cast<long>(j));
      }
      residual[i] = u[i] - acc;
      if (!u_abs[i].is_zero() && residual[i].abs() < floor_factor * u_abs[i]) {
        precision_limited = true;
      }
    }
    if (precision_limited) {
      est.coeffs.push_back(BigComplex::zero(prec));
      est.diagnostics.push_back({CoeffStatus::PrecisionLimited, 0.0});
      break;
    }

    std::vector<BigComplex> ratios(w);
    BigFloat scale(0.0, prec);
    for (std::size_t i = 0; i < w; ++i) {
      ratios[i] = residual[i] / pow_int(x[i], power);
      scale = max(scale, ratios[i].abs());
    }

    auto [value, correction] = extrapolate_to_zero(x, ratios, prec);
    BigFloat denom = max(scale, value.abs());
    double diag = denom.is_zero() ? 0.0 : (correction / denom).to_double();

    if (diag > cfg.conv_tol) {
      est.coeffs.push_back(value);
      est.diagnostics.push_back({CoeffStatus::NotConverged, diag});
      break;
    }
    est.coeffs.push_back(value);
    est.diagnostics.push_back({CoeffStatus::Converged, diag});
  }

  est.trustworthy = 0;
  for (const auto& d : est.diagnostics) {
    if (d.status != CoeffStatus::Converged) break;
    ++est.trustworthy;
  }
  if (est.trustworthy > 0 && est.coeffs[0].is_zero())
    fail(Errc::degenerate_data, "vanishing leading coefficient a_p");
  return est;
}

TaylorEstimate run_probe(const AccumulationData& data, ProbeConfig cfg) {
  OrderEstimate order = estimate_order(data, cfg);
  if (!order.p)
    fail(Errc::degenerate_data,
         order.identically_w
             ? "identically-w data: no leading order"
             : "no integer order (p_real = " + std::to_string(order.p_real) +
                   ", residual " + std::to_string(order.integrality_residual) +
                   ")");

  TaylorEstimate est = estimate_coefficients(data, cfg, order);
  while (est.trustworthy < cfg.max_coeffs + 1 &&
         !est.diagnostics.empty() &&
         est.diagnostics.back().status == CoeffStatus::PrecisionLimited &&
         cfg.precision_bits * 2 <= cfg.precision_cap) {
    cfg.precision_bits *= 2;
    TaylorEstimate retry = estimate_coefficients(data, cfg, order);
    if (retry.trustworthy <= est.trustworthy) {
      // No progress; the data itself is the limit.
      if (retry.trustworthy == est.trustworthy) est = retry;
      break;
    }
    est = retry;
  }
  return est;
}

nlohmann::json RadiusEstimate::to_json() const {
  switch (flag) {
    case RadiusFlag::Unset: return nullptr;
    case RadiusFlag::Zero: return "zero";
    case RadiusFlag::Infinite: return "infinite";
    case RadiusFlag::Finite: return value.to_string();
  }
  return nullptr;
}

RadiusEstimate radius_probe(const TaylorEstimate& est) {
  if (est.trustworthy < 3)
    fail(Errc::degenerate_data,
         "radius probe needs at least 3 trustworthy coefficients");
  const Precision prec = est.used_precision;

  BigFloat peak(0.0, prec);
  for (std::size_t i = 0; i < est.trustworthy; ++i)
    peak = max(peak, est.coeffs[i].abs());
  BigFloat zero_cut = peak * BigFloat::pow2(-static_cast<long>(prec) / 2, prec);

  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < est.trustworthy; ++i) {
    if (est.coeffs[i].abs() > zero_cut) last_nonzero = i;
  }

  RadiusEstimate out;
  // A tail that dies out within resolution reads as a terminating series.
  if (last_nonzero + 1 < est.trustworthy) {
    out.flag = RadiusFlag::Infinite;
    return out;
  }

  std::vector<double> ks;       // absolute index p+i
  std::vector<double> logroot;  // log|a_k| / k
  for (std::size_t i = 0; i <= last_nonzero; ++i) {
    BigFloat mag = est.coeffs[i].abs();
    if (mag <= zero_cut) continue;
    double k = static_cast<double>(est.p + static_cast<long>(i));
    ks.push_back(k);
    logroot.push_back(log(mag).to_double() / k);
  }
  if (ks.size() < 2) {
    out.flag = RadiusFlag::Infinite;
    return out;
  }

  double slope = least_squares(ks, logroot).slope;
  if (slope > 0.15) {
    out.flag = RadiusFlag::Zero;
    out.value = BigFloat(0.0, prec);
    return out;
  }
  double tail_root = logroot.back();
  for (std::size_t i = logroot.size() / 2; i < logroot.size(); ++i)
    tail_root = std::max(tail_root, logroot[i]);
  out.flag = RadiusFlag::Finite;
  out.value = exp(BigFloat(-tail_root, prec));
  return out;
}

nlohmann::json GermCheck::to_json() const {
  nlohmann::json j;
  j["verdict"] = pass ? "pass" : "fail";
  j["mismatches"] = mismatches;
  j["skipped"] = skipped;
  j["checked"] = checked;
  j["max_mismatch"] = max_mismatch.to_string();
  return j;
}

GermCheck germ_consistency_check(const OrbitSequence& seq,
                                 const TaylorEstimate& est,
                                 const ToleranceConfig& tol) {
  if (est.trustworthy == 0)
    fail(Errc::degenerate_data, "no trustworthy coefficients to evaluate");
  if (est.radius_flag == RadiusFlag::Zero)
    fail(Errc::degenerate_data,
         "estimated radius of convergence is zero; the germ covers no point");

  const Precision prec = std::max(est.used_precision, seq.precision_bits);
  const BigFloat one(1.0, prec);
  GermCheck check;
  check.max_mismatch = BigFloat(0.0, prec);

  for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
    BigComplex dx = seq.at(n).at_precision(prec) - est.zeta.at_precision(prec);
    if (est.radius_flag == RadiusFlag::Finite && !(dx.abs() < est.radius)) {
      check.skipped.push_back(n);
      continue;
    }
    BigComplex sum = BigComplex::zero(prec);
    for (std::size_t j = est.trustworthy; j-- > 0;) {
      sum = sum + est.coeffs[j].at_precision(prec) *
                      pow_int(dx, est.p + static_cast<long>(j));
    }
    BigComplex predicted = est.w.at_precision(prec) + sum;
    BigFloat gap = distance(predicted, seq.at(n + 1).at_precision(prec));
    check.max_mismatch = max(check.max_mismatch, gap);
    ++check.checked;
    if (gap > tol.rel_tol * (one + seq.modulus(n + 1))) {
      check.mismatches.push_back(n);
      check.pass = false;
    }
  }
  return check;
}

}  // namespace orbitforge
