#pragma once

#include <string>

#include "orbitforge/qc_map.hpp"
#include "orbitforge/sequence.hpp"

namespace orbitforge {

struct PlotStyle {
  std::string palette;  // empty = default
};

/// Orbit plot: points with index labels, successor arrows, and a log-scale
/// modulus inset. Byte-deterministic for fixed input and style. When the
/// final point repeats an earlier one, the successor forced by candidacy is
/// drawn as a dashed closing arrow.
std::string plot_orbit(const OrbitSequence& seq, const PlotStyle& style,
                       const std::string& verdict);

/// Map plot: source annulus circles, image circles, sampled point
/// correspondences, and a per-annulus distortion bar chart.
std::string plot_qc(const PiecewiseQCMap& map, const PlotStyle& style,
                    const std::string& verdict);

}  // namespace orbitforge
