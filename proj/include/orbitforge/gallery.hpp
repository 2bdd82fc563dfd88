#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orbitforge/sequence.hpp"

namespace orbitforge {

/// Built-in sequence generators used as the shared test corpus.
enum class GalleryId {
  Ex3_1,            // 1, 1/2, 1/4, 1/16, ...: squares after a broken head
  Ex3_2,            // the same tail shifted by fast-vanishing offsets
  Ex3_3,            // 2^(-a^n) for a in (1, 2)
  Ex3_4,            // perturbed squaring with scheduled giant coefficients
  QRClever,         // orbit of the angle-doubling modulus-contraction map
  QRNew,            // three-strand sequence defeating any local Holder bound
  AppendixCounter,  // alternate halving/squaring positive sequence
};

GalleryId gallery_id_from_string(const std::string& name);
const char* gallery_id_name(GalleryId id);
std::vector<GalleryId> all_gallery_ids();

struct GeneratorParams {
  std::size_t count = 10;
  Precision precision_bits = 0;  // 0 = auto from (id, count)
  Precision precision_cap = 1 << 20;
  double ex3_2_base = 10.0;      // offsets 2^(-b^(n+2)) on the n-th term
  double ex3_3_a = 1.5;
  double ex3_4_delta_log2 = -20.0;  // per-step perturbation budget, log2
  double qrclever_eps = 1e-3;
  double qrclever_s = 1e-2;
  double qrclever_z0 = 5e-3;  // must lie in (0, s)
};

/// Bits needed so every generated term is distinguishable from its
/// unperturbed neighbour; throws precision_cap_exceeded past the cap.
Precision required_precision(GalleryId id, const GeneratorParams& params);

/// Deterministic, bit-exact generation of the requested prefix with the
/// correct tail metadata.
OrbitSequence generate(GalleryId id, const GeneratorParams& params);

/// One application of the angle-doubling modulus-contraction map with
/// argument taken in [0, 2pi). The origin maps to itself (flagged by the
/// zero return; the argument is undefined there).
BigComplex qrclever_apply(const BigComplex& z, const BigFloat& eps,
                          const BigFloat& s);

/// Activation schedule for the perturbed-squaring generator: the m-th giant
/// coefficient 2^(m^2) switches on at step N_m, chosen constructively so
/// that the total perturbation stays below delta * |z_n|^2 at every step of
/// the generated prefix.
struct SigmaSchedule {
  std::vector<std::pair<long, std::size_t>> activation;  // (m, N_m)
  double delta_log2;
  bool certified = false;
  std::string certificate;  // worst observed perturbation ratio, log2

  nlohmann::json to_json() const;
};

SigmaSchedule ex3_4_sigma_schedule(const GeneratorParams& params);

}  // namespace orbitforge
