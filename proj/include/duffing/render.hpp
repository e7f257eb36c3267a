#pragma once

#include "duffing/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace duffing {

/// Rendering controls for the compactified phase portrait.
struct RenderSpec {
  int disc_radius_px = 360;
  /// Seeds for drawn orbits; std::nullopt derives them from the census
  /// (rings around each rest point, probes across each separatrix level).
  std::optional<std::vector<PlaneState>> orbit_seeds;
  bool draw_infinite_circle = true;
  double arrow_density = 0.15;  ///< arrowheads per unit of drawn path length
};

/// Standalone SVG of the phase portrait on the bounded disc, deterministic
/// for fixed inputs. The plane maps into the unit disc by r -> r/(1+r);
/// the boundary circle is the set of directions at infinity.
std::string render_disc(const Parameters& p, const RenderSpec& spec);

}  // namespace duffing
