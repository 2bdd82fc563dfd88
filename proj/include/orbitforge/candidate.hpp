#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbitforge/sequence.hpp"

namespace orbitforge {

struct PairWitness {
  std::size_t p = 0;
  std::size_t q = 0;
  std::string successor_gap;  // |z_{p+1} - z_{q+1}| as a decimal string
};

/// Result of the finite-prefix candidate-orbit check: a point that recurs
/// (within eq_tol) must have recurring successors. Near-coincidences, pairs
/// close but not within eq_tol, are flagged in evidence but never fail the
/// check.
struct ConsistencyReport {
  bool pass = true;
  std::optional<PairWitness> witness;  // minimal (p, q), lexicographic
  std::vector<PairWitness> near_coincidences;
  std::size_t pairs_checked = 0;
  std::string evidence;

  nlohmann::json to_json() const;
};

ConsistencyReport check_candidate_consistency(const OrbitSequence& seq,
                                              const ToleranceConfig& tol);

enum class OrbitClassTag { Periodic, Escaping, Bounded, Bungee };

const char* orbit_class_name(OrbitClassTag tag);

struct OrbitClass {
  OrbitClassTag tag = OrbitClassTag::Bounded;
  std::string evidence;
  bool exact = false;  // true iff derived from declared tail metadata

  nlohmann::json to_json() const;
};

/// Classifies a consistent sequence. Declared tail metadata gives the exact
/// class; otherwise a heuristic on the prefix is used and exact=false.
OrbitClass classify_orbit(const OrbitSequence& seq, const ToleranceConfig& tol);

struct DegreeHint {
  std::optional<long> degree;
  double residual = 0.0;  // |mean - round(mean)| of the log-modulus ratios
  double mean = 0.0;
  double stddev = 0.0;

  nlohmann::json to_json() const;
};

/// Ratio test log|z_{n+1}|/log|z_n| over the trailing half of the prefix;
/// an integral, stable limit is the only way a polynomial can realize an
/// escaping sequence.
DegreeHint polynomial_degree_hint(const OrbitSequence& seq);

}  // namespace orbitforge
