#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitforge/sequence.hpp"

namespace orbitforge {

/// Interpolation data accumulating at a point: nodes zeta_n -> zeta with
/// zeta_n != zeta, values w_n -> w. Construction reorders the pairs so that
/// |zeta_n - zeta| is non-increasing and drops duplicate nodes.
struct AccumulationData {
  std::vector<BigComplex> nodes;   // zeta_n
  std::vector<BigComplex> values;  // w_n
  BigComplex zeta;
  BigComplex w;

  static AccumulationData make(std::vector<BigComplex> nodes,
                               std::vector<BigComplex> values, BigComplex zeta,
                               BigComplex w);

  /// Pairs (z_n, z_{n+1}) from an orbit prefix, with given accumulation
  /// point and value limit.
  static AccumulationData from_orbit(const OrbitSequence& seq,
                                     const BigComplex& zeta,
                                     const BigComplex& w);

  /// Estimates zeta (and takes w = zeta, the fixed-point case) as the mean
  /// of the last `window` points, requiring the tail to have settled.
  static AccumulationData from_orbit_auto(const OrbitSequence& seq,
                                          std::size_t window);

  std::size_t size() const { return nodes.size(); }
};

struct ProbeConfig {
  std::size_t max_coeffs = 8;   // K: coefficients beyond a_p to attempt
  std::size_t window = 6;       // tail length used in limit fits
  double conv_tol = 0.01;
  Precision precision_bits = 256;
  Precision precision_cap = 4096;  // escalation ceiling (doubling)
};

struct OrderEstimate {
  double p_real = 0.0;
  std::optional<long> p;
  double integrality_residual = 0.0;
  bool identically_w = false;  // all tail values equal w
  bool no_limit = false;       // log-ratio slopes oscillate
  std::string note;

  nlohmann::json to_json() const;
};

/// Order of the leading term: extrapolated limit of
/// log|w_n - w| / log|zeta_n - zeta| over the tail window (least-squares
/// slope plus one Richardson step).
OrderEstimate estimate_order(const AccumulationData& data,
                             const ProbeConfig& cfg);

enum class CoeffStatus { Converged, NotConverged, PrecisionLimited };

const char* coeff_status_name(CoeffStatus s);

struct CoeffDiagnostics {
  CoeffStatus status = CoeffStatus::Converged;
  double residual = 0.0;  // relative size of the last extrapolation correction
};

enum class RadiusFlag { Unset, Zero, Finite, Infinite };

struct TaylorEstimate {
  long p = 0;
  std::vector<BigComplex> coeffs;  // a_p .. a_{p+K'}
  std::vector<CoeffDiagnostics> diagnostics;
  std::size_t trustworthy = 0;  // leading run of converged coefficients
  double integrality_residual = 0.0;
  BigComplex zeta;
  BigComplex w;
  Precision used_precision = 256;
  RadiusFlag radius_flag = RadiusFlag::Unset;
  BigFloat radius;

  nlohmann::json to_json() const;
};

/// Iterative coefficient limits: a_p from the leading ratio, then each
/// a_{p+k} from the ratio of the partial-sum residual, every limit taken by
/// extrapolating the tail window to the accumulation point. Stages whose
/// residual drops below 2^(32-P) * |w_n - w| are precision-limited; stages
/// whose extrapolation fails to settle stop the run.
TaylorEstimate estimate_coefficients(const AccumulationData& data,
                                     const ProbeConfig& cfg,
                                     const OrderEstimate& order);

/// Full pipeline: order estimate + coefficients with automatic precision
/// escalation (doubling up to cfg.precision_cap) while stages come back
/// precision-limited.
TaylorEstimate run_probe(const AccumulationData& data, ProbeConfig cfg);

struct RadiusEstimate {
  RadiusFlag flag = RadiusFlag::Unset;
  BigFloat value;

  nlohmann::json to_json() const;
};

/// Root-test estimate over the trustworthy coefficients; super-linear growth
/// of |a_k|^(1/k) yields the zero flag, a terminating tail the infinity flag.
RadiusEstimate radius_probe(const TaylorEstimate& est);

struct GermCheck {
  std::vector<std::size_t> mismatches;
  std::vector<std::size_t> skipped;  // points outside the estimated radius
  std::size_t checked = 0;
  bool pass = true;
  BigFloat max_mismatch;

  nlohmann::json to_json() const;
};

/// Evaluates the truncated recovered series at each orbit point and compares
/// with the successor.
GermCheck germ_consistency_check(const OrbitSequence& seq,
                                 const TaylorEstimate& est,
                                 const ToleranceConfig& tol);

}  // namespace orbitforge
