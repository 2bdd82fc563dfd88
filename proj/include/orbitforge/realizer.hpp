#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitforge/polynomial.hpp"
#include "orbitforge/sequence.hpp"

namespace orbitforge {

/// A finite periodic orbit description w_0, ..., w_n, w_{n+1} where the
/// last entry re-enters the cycle: w_{n+1} equals w_{reentry_index} exactly.
struct PeriodicOrbitSpec {
  std::vector<BigComplex> w;
  std::size_t reentry_index = 0;

  std::size_t node_count() const { return w.size() - 1; }  // nodes w_0..w_n
  void validate() const;

  /// Smallest |prod_{k' != k} (w_k - w_{k'})| over the nodes; tiny values
  /// flag an ill-conditioned construction.
  BigFloat conditioning(Precision prec) const;

  /// Detects the least q with z_q matching an earlier z_p within eq_tol and
  /// snaps the re-entry value exactly.
  static PeriodicOrbitSpec from_sequence(const OrbitSequence& seq,
                                         const ToleranceConfig& tol);
};

/// The map applied pointwise inside the interpolating construction: either a
/// polynomial or c*e^z (which yields a transcendental realizer).
class BaseFunction {
 public:
  enum class Kind { Polynomial, ExponentialShift };

  static BaseFunction zero(Precision prec);
  static BaseFunction polynomial(std::vector<BigComplex> coeffs);
  static BaseFunction exponential_shift(BigComplex c);

  Kind kind() const { return kind_; }
  bool is_polynomial() const { return kind_ == Kind::Polynomial; }
  const Polynomial& poly() const { return poly_; }
  const BigComplex& shift() const { return shift_; }
  std::size_t degree() const;  // polynomial kind only
  BigComplex eval(const BigComplex& z) const;

 private:
  BaseFunction() = default;
  Kind kind_ = Kind::Polynomial;
  Polynomial poly_;
  BigComplex shift_;
};

/// The realizing function for a periodic orbit: a node-product interpolation
/// with correction terms so that every node maps to its successor. For a
/// polynomial base the expanded coefficient form is kept; for the
/// exponential base only the closed-form evaluator exists.
class Realizer {
 public:
  bool expanded() const { return expanded_.has_value(); }
  const std::vector<BigComplex>& coefficients() const;
  std::size_t degree() const;

  BigComplex eval(const BigComplex& z) const;

  const PeriodicOrbitSpec& spec() const { return spec_; }
  const BaseFunction& base() const { return base_; }
  Precision working_precision() const { return prec_; }

  /// Max |f(w_k) - w_{k+1}| recorded at build time.
  const BigFloat& node_residual() const { return node_residual_; }
  const std::optional<std::string>& conditioning_warning() const {
    return conditioning_warning_;
  }

  friend Realizer build_periodic_realizer(const PeriodicOrbitSpec& spec,
                                          const BaseFunction& base,
                                          Precision prec);

 private:
  PeriodicOrbitSpec spec_;
  BaseFunction base_;
  Precision prec_ = 256;
  std::optional<Polynomial> expanded_;
  // Closed-form pieces, kept for the transcendental case: per-node factors
  // Q_k and targets t_k = w_{k+1} / prod_{k' != k}(w_k - w_{k'}).
  std::vector<Polynomial> node_factors_;
  std::vector<BigComplex> node_targets_;
  BigFloat node_residual_;
  std::optional<std::string> conditioning_warning_;
};

Realizer build_periodic_realizer(const PeriodicOrbitSpec& spec,
                                 const BaseFunction& base, Precision prec);

/// Member of the one-parameter family with base c*z; equals the base-zero
/// realizer plus c*(n+1) times the node product.
Realizer realizer_family_member(const PeriodicOrbitSpec& spec,
                                const BigComplex& c, Precision prec);

struct IterationResult {
  OrbitSequence seq;
  bool overflow = false;
  std::size_t completed = 0;  // number of map applications performed
};

/// [z0, f(z0), ..., f^count(z0)] at the realizer's working precision.
/// Stops with an explicit overflow marker when a step leaves the
/// representable range.
IterationResult iterate(const Realizer& f, const BigComplex& z0,
                        std::size_t count);

struct RealizationCheck {
  bool pass = true;
  BigFloat max_residual;
  std::optional<std::size_t> first_failure;
  std::size_t checked = 0;

  nlohmann::json to_json() const;
};

/// Checks |f(z_k) - z_{k+1}| <= rel_tol * (1 + |z_{k+1}|) for every k.
RealizationCheck verify_realization(const Realizer& f, const OrbitSequence& seq,
                                    const ToleranceConfig& tol);

}  // namespace orbitforge
