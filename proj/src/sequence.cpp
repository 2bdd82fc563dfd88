#include "orbitforge/sequence.hpp"

#include <string>

#include "orbitforge/error.hpp"

namespace orbitforge {

const char* TailInfo::kind_name(Kind k) {
  switch (k) {
    case Kind::None: return "none";
    case Kind::TendsToZero: return "tends-to-zero";
    case Kind::TendsToPoint: return "tends-to-point";
    case Kind::Escaping: return "escaping";
    case Kind::PeriodicFrom: return "periodic-from";
    case Kind::Bounded: return "bounded";
  }
  return "none";
}

nlohmann::json TailInfo::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_name(kind);
  if (kind == Kind::TendsToPoint && point) {
    auto [re, im] = point->to_strings();
    j["point"] = {re, im};
  }
  if (kind == Kind::PeriodicFrom) {
    j["index"] = index;
    j["period"] = period;
  }
  if (kind == Kind::Bounded && bound) j["bound"] = bound->to_string();
  return j;
}

TailInfo TailInfo::from_json(const nlohmann::json& j, Precision prec) {
  TailInfo t;
  if (j.is_null()) return t;
  if (!j.is_object() || !j.contains("kind"))
    fail(Errc::parse_error, "tail must be an object with a 'kind' field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "none") {
    t.kind = Kind::None;
  } else if (kind == "tends-to-zero") {
    t.kind = Kind::TendsToZero;
  } else if (kind == "tends-to-point") {
    t.kind = Kind::TendsToPoint;
    const auto& p = j.at("point");
    t.point = BigComplex::from_strings(p.at(0).get<std::string>(),
                                       p.at(1).get<std::string>(), prec);
  } else if (kind == "escaping") {
    t.kind = Kind::Escaping;
  } else if (kind == "periodic-from") {
    t.kind = Kind::PeriodicFrom;
    t.index = j.at("index").get<std::size_t>();
    t.period = j.at("period").get<std::size_t>();
    if (t.period == 0) fail(Errc::parse_error, "periodic-from tail needs period >= 1");
  } else if (kind == "bounded") {
    t.kind = Kind::Bounded;
    t.bound = BigFloat::from_string(j.at("bound").get<std::string>(), prec);
  } else {
    fail(Errc::parse_error, "unknown tail kind '" + kind + "'");
  }
  return t;
}

void OrbitSequence::validate() const {
  if (points.size() < 2)
    fail(Errc::sequence_too_short, "sequence needs at least 2 points");
  if (precision_bits < 53)
    fail(Errc::invalid_sequence, "precision_bits must be >= 53");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_finite())
      fail(Errc::invalid_sequence,
           "point " + std::to_string(i) + " is not finite");
  }
  if (tail.kind == TailInfo::Kind::PeriodicFrom) {
    if (tail.index >= points.size())
      fail(Errc::invalid_sequence, "periodic-from index beyond prefix");
    BigFloat tol = BigFloat::pow2(32 - static_cast<long>(precision_bits),
                                  precision_bits);
    for (std::size_t i = tail.index; i + tail.period < points.size(); ++i) {
      if (distance(points[i], points[i + tail.period]) > tol)
        fail(Errc::invalid_sequence,
             "prefix violates declared periodic-from tail at index " +
                 std::to_string(i));
    }
  }
}

nlohmann::json OrbitSequence::to_json() const {
  nlohmann::json j;
  j["precision_bits"] = static_cast<long>(precision_bits);
  if (tail.kind != TailInfo::Kind::None) j["tail"] = tail.to_json();
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& z : points) {
    auto [re, im] = z.to_strings();
    pts.push_back({re, im});
  }
  j["points"] = pts;
  return j;
}

OrbitSequence OrbitSequence::from_json(const nlohmann::json& j) {
  OrbitSequence seq;
  if (!j.is_object()) fail(Errc::parse_error, "sequence document must be an object");
  if (!j.contains("points")) fail(Errc::parse_error, "missing 'points' field");
  seq.precision_bits = j.value("precision_bits", 256L);
  if (seq.precision_bits < 2)
    fail(Errc::parse_error, "precision_bits must be positive");
  if (j.contains("tail")) seq.tail = TailInfo::from_json(j.at("tail"), seq.precision_bits);
  const auto& pts = j.at("points");
  if (!pts.is_array()) fail(Errc::parse_error, "'points' must be an array");
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != 2)
      fail(Errc::parse_error, "each point must be a [re, im] string pair");
    seq.points.push_back(BigComplex::from_strings(p.at(0).get<std::string>(),
                                                  p.at(1).get<std::string>(),
                                                  seq.precision_bits));
  }
  seq.validate();
  return seq;
}

OrbitSequence OrbitSequence::from_json_text(const std::string& text) {
  return from_json(nlohmann::json::parse(text));
}

std::string OrbitSequence::to_json_text() const { return to_json().dump(2); }

OrbitSequence OrbitSequence::at_precision(Precision prec) const {
  OrbitSequence out;
  out.precision_bits = prec;
  out.tail = tail;
  out.points.reserve(points.size());
  for (const auto& z : points) out.points.push_back(z.at_precision(prec));
  return out;
}

ToleranceConfig ToleranceConfig::for_precision(Precision prec) {
  ToleranceConfig t{
      BigFloat::pow2(32 - static_cast<long>(prec), prec),
      BigFloat::pow2(64 - static_cast<long>(prec), prec),
      BigFloat(1e6, 64),
  };
  return t;
}

void ToleranceConfig::validate() const {
  if (!(eq_tol > BigFloat(0.0, 64)) || !(rel_tol > BigFloat(0.0, 64)) ||
      !(escape_radius > BigFloat(0.0, 64)))
    fail(Errc::invalid_sequence, "tolerances must be strictly positive");
}

}  // namespace orbitforge
