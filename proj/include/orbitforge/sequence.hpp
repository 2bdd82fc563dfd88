#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitforge/bigcomplex.hpp"

namespace orbitforge {

/// Declared asymptotic behaviour of a sequence beyond its stored prefix.
struct TailInfo {
  enum class Kind {
    None,
    TendsToZero,
    TendsToPoint,
    Escaping,
    PeriodicFrom,
    Bounded,
  };

  Kind kind = Kind::None;
  std::optional<BigComplex> point;   // TendsToPoint
  std::size_t index = 0;             // PeriodicFrom
  std::size_t period = 0;            // PeriodicFrom
  std::optional<BigFloat> bound;     // Bounded

  static const char* kind_name(Kind k);
  nlohmann::json to_json() const;
  static TailInfo from_json(const nlohmann::json& j, Precision prec);
};

/// Finite prefix of a complex sequence, the universal input. Points are
/// parsed from decimal strings at `precision_bits` and never pre-rounded.
struct OrbitSequence {
  std::vector<BigComplex> points;
  Precision precision_bits = 256;
  TailInfo tail;

  std::size_t size() const { return points.size(); }
  const BigComplex& at(std::size_t i) const { return points.at(i); }
  BigFloat modulus(std::size_t i) const { return points.at(i).abs(); }

  /// Length >= 2, precision >= 53, all points finite; a periodic-from tail
  /// must be consistent with the stored prefix.
  void validate() const;

  nlohmann::json to_json() const;
  static OrbitSequence from_json(const nlohmann::json& j);
  static OrbitSequence from_json_text(const std::string& text);
  std::string to_json_text() const;

  OrbitSequence at_precision(Precision prec) const;
};

/// Comparison tolerances. Defaults derive from the working precision:
/// eq_tol = 2^(32-P) and rel_tol = 2^(64-P), so eq_tol <= rel_tol holds and
/// the eq_tol <= rel_tol * max-modulus guard is satisfied whenever the
/// sequence reaches modulus ~1.
struct ToleranceConfig {
  BigFloat eq_tol;
  BigFloat rel_tol;
  BigFloat escape_radius;

  static ToleranceConfig for_precision(Precision prec);
  void validate() const;
};

}  // namespace orbitforge
