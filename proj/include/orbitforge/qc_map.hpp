#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitforge/qr_checks.hpp"
#include "orbitforge/sequence.hpp"

namespace orbitforge {

/// Per-annulus data for the logarithmic-coordinate gluing: the map on the
/// n-th annulus is z |-> z_{n+2} exp(phi(log(z / z_{n+1}))) with the
/// real-linear phi(x+iy) = (d'/d) x + i (y + (alpha/d) x).
struct AnnulusMapParams {
  std::size_t n = 0;
  BigFloat d;        // log(|z_n| / |z_{n+1}|) > 0
  BigFloat d_prime;  // log(|z_{n+1}| / |z_{n+2}|) > 0
  BigFloat alpha;    // 2 arg z_{n+1} - arg z_n - arg z_{n+2}, in (-4pi, 4pi]
  BigFloat mu_abs;   // dilatation magnitude, in [0, 1)
  BigFloat K;        // (1 + mu_abs) / (1 - mu_abs)

  nlohmann::json to_json() const;
};

/// Dilatation of the linear annulus map from (d, d', alpha): with
/// g' = d'/d and t = alpha/d,
/// |mu|^2 = ((g'-1)^2 + t^2) / ((g'+1)^2 + t^2) and K = (1+|mu|)/(1-|mu|).
std::pair<BigFloat, BigFloat> dilatation(const BigFloat& d,
                                         const BigFloat& d_prime,
                                         const BigFloat& alpha);

struct QCHypotheses {
  QRParams params;
  double D = 0.5;  // per-step modulus contraction bound, in (0, 1)

  nlohmann::json to_json() const;
};

/// Piecewise map realizing a zero-tending sequence of strictly decreasing
/// moduli: fixed origin, linear annulus maps inside |z_0|, and the linear
/// factor z_1/z_0 outside. Immutable after build.
class PiecewiseQCMap {
 public:
  const OrbitSequence& sequence() const { return seq_; }
  const std::vector<AnnulusMapParams>& annuli() const { return annuli_; }
  const BigComplex& outer_factor() const { return outer_factor_; }
  const BigFloat& K_global() const { return K_global_; }
  const std::optional<QCHypotheses>& hypotheses() const { return hypotheses_; }
  const std::optional<BigFloat>& K_bound() const { return K_bound_; }
  Precision precision() const { return seq_.precision_bits; }

  /// Covered region: the origin, |z| > |z_{L-2}|. Throws out_of_range for
  /// points below the innermost constructed annulus.
  BigComplex evaluate(const BigComplex& z) const;

  /// Modulus of the innermost covered circle.
  const BigFloat& inner_radius() const { return moduli_.back(); }

  nlohmann::json to_json() const;

  friend PiecewiseQCMap build_qc_map(const OrbitSequence& seq,
                                     const std::optional<QCHypotheses>& hyp);

 private:
  OrbitSequence seq_;
  std::vector<AnnulusMapParams> annuli_;
  BigComplex outer_factor_;
  BigFloat K_global_;
  std::optional<QCHypotheses> hypotheses_;
  std::optional<BigFloat> K_bound_;
  std::vector<BigFloat> moduli_;  // |z_0| .. |z_{L-2}|: annulus boundaries
};

/// Builds the realizing map. With hypotheses supplied, validates the
/// contraction bound |z_{n+1}| <= D |z_n| for every n and the shrinking-side
/// ratio condition, and records the closed-form distortion bound; without
/// them the construction runs in diagnostic mode (strictly decreasing moduli
/// still required).
PiecewiseQCMap build_qc_map(const OrbitSequence& seq,
                            const std::optional<QCHypotheses>& hyp);

struct MapCheck {
  bool pass = true;
  BigFloat max_residual;  // relative
  std::optional<std::size_t> first_failure;
  std::size_t checked = 0;

  nlohmann::json to_json() const;
};

/// |f(z_n) - z_{n+1}| <= rel_tol |z_{n+1}| for every constructible n.
MapCheck verify_orbit_realization(const PiecewiseQCMap& map,
                                  const BigFloat& rel_tol);

/// f(z_n e^{i beta}) = z_{n+1} e^{i beta} sampled over beta, all annuli.
MapCheck verify_circle_identity(const PiecewiseQCMap& map, std::size_t samples,
                                const BigFloat& rel_tol);

struct SeamCheck {
  bool pass = true;
  BigFloat max_discrepancy;  // relative to the image circle radius
  std::size_t samples = 0;

  nlohmann::json to_json() const;
};

/// Compares the limit of the annulus-n formula onto the seam |z| = |z_{n+1}|
/// against the annulus-(n+1) formula on the seam, at sampled angles.
SeamCheck verify_boundary_continuity(const PiecewiseQCMap& map, std::size_t n,
                                     std::size_t samples, const BigFloat& tol);

/// phi(x + i(y + 2pi)) = phi(x + iy) + 2 pi i at sampled points; linear phi
/// satisfies this identically, and the parameter type admits nothing else.
bool periodicity_audit(const AnnulusMapParams& params, Precision prec);

/// Min and max of |f| on the circle |z| = r.
std::pair<BigFloat, BigFloat> modulus_bounds(const PiecewiseQCMap& map,
                                             const BigFloat& r,
                                             std::size_t samples);

struct DilatationReport {
  std::vector<AnnulusMapParams> per_annulus;
  BigFloat sup_mu;
  BigFloat K_global;
  std::optional<BigFloat> K_bound;
  std::optional<BigFloat> max_theta_prime;  // sup |alpha| / d, diagnostics
  bool bound_ok = true;  // per-annulus K <= closed-form bound from n0 on

  nlohmann::json to_json() const;
};

DilatationReport dilatation_report(const PiecewiseQCMap& map);

}  // namespace orbitforge
