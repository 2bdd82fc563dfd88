#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitforge/sequence.hpp"

namespace orbitforge {

/// Growth-envelope parameters (mu, nu, C > 1, start index n0) of the
/// two-sided ratio conditions a quasiregular realizer forces on moduli.
struct QRParams {
  double mu = 1.0;
  double nu = 1.0;
  double log2_C = 0.0;  // authoritative; C = 2^log2_C
  std::size_t n0 = 0;

  BigFloat C(Precision prec) const;
  BigFloat two_log_C(Precision prec) const;  // 2 ln C
  void validate() const;                     // mu, nu > 0; C >= 1
  nlohmann::json to_json() const;
};

struct IneqWitness {
  std::size_t n = 0;
  std::string side;  // "down-lower", "down-upper", "up-lower", "up-upper"
  double lhs = 0.0;  // log-domain values, for reporting only
  double rhs = 0.0;

  nlohmann::json to_json() const;
};

struct QRConditionReport {
  bool down_ok = true;  // rows with |z_n| >= |z_{n+1}|
  bool up_ok = true;    // rows with |z_n| <  |z_{n+1}|
  std::vector<IneqWitness> witnesses;
  std::size_t checked = 0;

  bool pass() const { return down_ok && up_ok; }
  nlohmann::json to_json() const;
};

/// Two-sided ratio conditions, evaluated in the log domain at the sequence's
/// working precision. Requires positive moduli on a zero-tending sequence
/// (declared tail or non-increasing prefix).
QRConditionReport check_necessary(const OrbitSequence& seq,
                                  const QRParams& params);

/// One-sided halves (the upper bound on the shrinking side, the lower bound
/// on the growing side), which already force two-sided power bounds between
/// consecutive moduli.
QRConditionReport check_one_sided(const OrbitSequence& seq,
                                  const QRParams& params);

struct ParamGrid {
  std::vector<double> mu;
  std::vector<double> nu;
  std::vector<double> log2_C;

  static ParamGrid defaults();
  void validate() const;
};

/// First grid point (mu ascending, then nu, then C) passing check_necessary
/// with n0 = 0. A fast double-precision prefilter rejects clear failures;
/// borderline candidates are confirmed at working precision.
std::optional<QRParams> search_params(const OrbitSequence& seq,
                                      const ParamGrid& grid);

struct HolderExponents {
  double alpha = 2.0;
  double beta = 0.5;
  std::size_t N = 0;

  nlohmann::json to_json() const;
};

/// Exponents of the two-sided power bound x_n^alpha <= x_{n+1} <= x_n^beta
/// implied by the one-sided conditions: alpha = mu + 2 + max(mu, nu),
/// beta = mu / (2(mu+1)), with N the first index from which every modulus
/// stays below min(1, C^(-4/mu)).
HolderExponents derive_holder(const QRParams& params, const OrbitSequence& seq);

struct HolderReport {
  bool pass = true;
  std::vector<IneqWitness> violations;
  std::size_t checked = 0;
  std::size_t start = 0;

  nlohmann::json to_json() const;
};

HolderReport verify_holder(const OrbitSequence& seq,
                           const HolderExponents& exps);

enum class PairSelector { ThreeStride, Adjacent, AllPairs };

PairSelector pair_selector_from_string(const std::string& name);
const char* pair_selector_name(PairSelector s);

struct HolderViolationWitness {
  double alpha = 0.0;
  double log2_C = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  double log_lhs = 0.0;  // ln |f-image distance|
  double log_rhs = 0.0;  // ln (C |preimage distance|^alpha)

  nlohmann::json to_json() const;
};

struct HolderScanResult {
  std::vector<HolderViolationWitness> witnesses;  // first witness per (alpha, C)
  std::size_t grid_points = 0;
  bool all_witnessed = false;

  nlohmann::json to_json() const;
};

/// Searches index pairs inside a small disc for |f(x)-f(y)| > C |x-y|^alpha;
/// a witness for every grid point refutes any local Holder bound and with it
/// quasiregular realizability.
HolderScanResult holder_violation_scan(const OrbitSequence& seq,
                                       const std::vector<double>& alpha_grid,
                                       const std::vector<double>& log2_C_grid,
                                       PairSelector selector,
                                       const BigFloat& disc_radius);

/// Default disc radius for the violation scan.
BigFloat default_scan_disc(Precision prec);

}  // namespace orbitforge
