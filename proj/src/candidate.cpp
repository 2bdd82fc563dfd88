#include "orbitforge/candidate.hpp"

#include <cmath>

#include "orbitforge/error.hpp"

namespace orbitforge {

namespace {

constexpr double kNearCoincidenceFactor = 16.0;
constexpr std::size_t kMaxNearRecords = 8;

}  // namespace

nlohmann::json ConsistencyReport::to_json() const {
  nlohmann::json j;
  j["verdict"] = pass ? "pass" : "fail";
  j["evidence"] = evidence;
  if (witness) {
    j["witness"] = {{"p", witness->p},
                    {"q", witness->q},
                    {"successor_gap", witness->successor_gap}};
  } else {
    j["witness"] = nullptr;
  }
  j["pairs_checked"] = pairs_checked;
  nlohmann::json near = nlohmann::json::array();
  for (const auto& w : near_coincidences) near.push_back({{"p", w.p}, {"q", w.q}});
  j["near_coincidences"] = near;
  return j;
}

ConsistencyReport check_candidate_consistency(const OrbitSequence& seq,
                                              const ToleranceConfig& tol) {
  seq.validate();
  tol.validate();

  const std::size_t len = seq.size();
  ConsistencyReport report;
  BigFloat near_tol = tol.eq_tol * kNearCoincidenceFactor;
  BigFloat one(1.0, seq.precision_bits);

  // Lexicographic (p, q) scan; q < len-1 so that both successors exist.
  for (std::size_t p = 0; p + 1 < len && report.pass; ++p) {
    for (std::size_t q = p + 1; q + 1 < len; ++q) {
      ++report.pairs_checked;
      BigFloat gap = distance(seq.at(p), seq.at(q));
      if (gap <= tol.eq_tol) {
        BigFloat succ_gap = distance(seq.at(p + 1), seq.at(q + 1));
        if (succ_gap > tol.rel_tol * (one + seq.at(p + 1).abs())) {
          report.pass = false;
          report.witness = PairWitness{p, q, succ_gap.to_string()};
          break;
        }
      } else if (gap <= near_tol &&
                 report.near_coincidences.size() < kMaxNearRecords) {
        report.near_coincidences.push_back(PairWitness{p, q, ""});
      }
    }
  }

  if (!report.pass) {
    report.evidence = "point recurs at (" + std::to_string(report.witness->p) +
                      ", " + std::to_string(report.witness->q) +
                      ") with diverging successors";
  } else if (!report.near_coincidences.empty()) {
    report.evidence = "consistent; " +
                      std::to_string(report.near_coincidences.size()) +
                      " near-coincident pair(s) flagged (not failed)";
  } else {
    report.evidence = "consistent on all " +
                      std::to_string(report.pairs_checked) + " pairs";
  }
  return report;
}

const char* orbit_class_name(OrbitClassTag tag) {
  switch (tag) {
    case OrbitClassTag::Periodic: return "periodic";
    case OrbitClassTag::Escaping: return "escaping";
    case OrbitClassTag::Bounded: return "bounded";
    case OrbitClassTag::Bungee: return "bungee";
  }
  return "bounded";
}

nlohmann::json OrbitClass::to_json() const {
  return {{"class", orbit_class_name(tag)},
          {"evidence", evidence},
          {"exact", exact}};
}

OrbitClass classify_orbit(const OrbitSequence& seq, const ToleranceConfig& tol) {
  ConsistencyReport consistency = check_candidate_consistency(seq, tol);
  if (!consistency.pass)
    fail(Errc::invalid_sequence,
         "cannot classify an inconsistent sequence: " + consistency.evidence);

  const std::size_t len = seq.size();

  if (seq.tail.kind != TailInfo::Kind::None) {
    OrbitClass out;
    out.exact = true;
    switch (seq.tail.kind) {
      case TailInfo::Kind::PeriodicFrom:
        out.tag = OrbitClassTag::Periodic;
        out.evidence = "declared periodic-from(" + std::to_string(seq.tail.index) +
                       ", " + std::to_string(seq.tail.period) + ") tail";
        return out;
      case TailInfo::Kind::Escaping:
        out.tag = OrbitClassTag::Escaping;
        out.evidence = "declared escaping tail";
        return out;
      case TailInfo::Kind::TendsToZero:
      case TailInfo::Kind::TendsToPoint:
        out.tag = OrbitClassTag::Bounded;
        out.evidence = "declared convergent tail forces boundedness";
        return out;
      case TailInfo::Kind::Bounded:
        out.tag = OrbitClassTag::Bounded;
        out.evidence = "declared bound on all moduli";
        return out;
      case TailInfo::Kind::None:
        break;
    }
  }

  OrbitClass out;
  out.exact = false;

  // Heuristic order: repeat -> periodic; growing tail -> escaping;
  // small prefix -> bounded; otherwise bungee.
  for (std::size_t p = 0; p < len; ++p) {
    for (std::size_t q = p + 1; q < len; ++q) {
      if (distance(seq.at(p), seq.at(q)) <= tol.eq_tol) {
        out.tag = OrbitClassTag::Periodic;
        out.evidence = "prefix repeat at (" + std::to_string(p) + ", " +
                       std::to_string(q) + ")";
        return out;
      }
    }
  }

  const std::size_t window = (len + 3) / 4;
  bool escaping = window >= 2;
  for (std::size_t i = len - window; escaping && i + 1 < len; ++i) {
    if (!(seq.modulus(i) < seq.modulus(i + 1))) escaping = false;
  }
  if (escaping) {
    for (std::size_t i = len - window; i < len; ++i) {
      if (!(seq.modulus(i) > tol.escape_radius)) {
        escaping = false;
        break;
      }
    }
  }
  if (escaping) {
    out.tag = OrbitClassTag::Escaping;
    out.evidence = "last " + std::to_string(window) +
                   " moduli strictly increasing beyond escape radius";
    return out;
  }

  BigFloat max_mod = seq.modulus(0);
  for (std::size_t i = 1; i < len; ++i) max_mod = max(max_mod, seq.modulus(i));
  if (max_mod <= tol.escape_radius) {
    out.tag = OrbitClassTag::Bounded;
    out.evidence = "prefix max modulus " + max_mod.to_string() +
                   " within escape radius";
    return out;
  }

  out.tag = OrbitClassTag::Bungee;
  out.evidence = "prefix exceeds escape radius without sustained growth";
  return out;
}

nlohmann::json DegreeHint::to_json() const {
  nlohmann::json j;
  j["degree"] = degree ? nlohmann::json(*degree) : nlohmann::json(nullptr);
  j["residual"] = residual;
  j["mean"] = mean;
  j["stddev"] = stddev;
  return j;
}

DegreeHint polynomial_degree_hint(const OrbitSequence& seq) {
  seq.validate();
  const std::size_t len = seq.size();
  const std::size_t ratio_count = len - 1;
  const std::size_t window = std::min<std::size_t>((len + 1) / 2, ratio_count);
  const std::size_t first = ratio_count - window;
  const BigFloat one(1.0, seq.precision_bits);

  std::vector<double> ratios;
  ratios.reserve(window);
  for (std::size_t n = first; n < ratio_count; ++n) {
    BigFloat m0 = seq.modulus(n);
    BigFloat m1 = seq.modulus(n + 1);
    if (m0 == one || m1 == one)
      fail(Errc::unit_modulus,
           "modulus 1 at index " + std::to_string(m0 == one ? n : n + 1) +
               ": log-modulus ratio undefined");
    if (m0.is_zero() || m1.is_zero())
      fail(Errc::zero_modulus, "zero modulus in ratio window");
    ratios.push_back((log(m1) / log(m0)).to_double());
  }

  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= static_cast<double>(ratios.size());
  double stddev = std::sqrt(var);

  DegreeHint hint;
  hint.mean = mean;
  hint.stddev = stddev;
  hint.residual = std::abs(mean - std::round(mean));
  if (stddev < 0.05 && hint.residual < 0.05) {
    hint.degree = static_cast<long>(std::llround(mean));
  }
  return hint;
}

}  // namespace orbitforge
