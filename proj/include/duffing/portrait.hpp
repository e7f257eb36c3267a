#pragma once

#include "duffing/equilibria.hpp"
#include "duffing/infinity.hpp"
#include "duffing/return_map.hpp"

#include <optional>
#include <string>
#include <vector>

namespace duffing {

/// Which of the four portrait families the parameter point belongs to.
enum class PortraitFigure { AlphaZero, LinearDegree, EvenDegree, OddDegree };

/// Wire names are fixed by the report schema.
const char* to_string(PortraitFigure f);

/// Panel assignment inside the portrait family. Points on an equality
/// boundary (or in a sign corner the panel captions do not cover) carry a
/// boundary marker instead of a panel letter.
struct PortraitClass {
  PortraitFigure figure = PortraitFigure::AlphaZero;
  char panel = 0;  ///< 'a'..'h'; 0 when boundary is set
  std::string conditions;
  std::optional<std::string> boundary;
  std::optional<std::string> note;  ///< e.g. degree extension of the captioned panels

  bool degenerate() const { return boundary.has_value(); }
};

PortraitClass classify_portrait(const Parameters& p);

/// Full qualitative census backing a portrait assignment. Cross-module
/// contradictions are reported in `inconsistencies`, never reconciled.
struct PortraitCensus {
  std::vector<Equilibrium> finite;
  std::vector<InfiniteEquilibrium> infinite;
  std::optional<CycleReport> cycles;  ///< present when alpha = 0
  CenterVerdict center;
  std::vector<std::string> inconsistencies;
};

PortraitCensus census(const Parameters& p);

/// Coarse signature (finite kinds, infinite kinds & sectors, cycle kind,
/// center flags) used to check that equal panels describe equal dynamics.
std::string census_signature(const PortraitCensus& c);

}  // namespace duffing
