#pragma once

#include "duffing/integrate.hpp"
#include "duffing/portrait.hpp"
#include "duffing/return_map.hpp"

#include <json.hpp>

#include <string>

namespace duffing {

inline constexpr const char* kSchemaName = "duffing-atlas/1";

nlohmann::json to_json(const Parameters& p);
nlohmann::json to_json(const DegeneracyFlags& f);
nlohmann::json to_json(const Equilibrium& e);
nlohmann::json to_json(const SectorStructure& s);
nlohmann::json to_json(const InfiniteEquilibrium& e);
nlohmann::json to_json(const CenterVerdict& v);
nlohmann::json to_json(const CycleReport& c);
nlohmann::json to_json(const PortraitClass& pc);
nlohmann::json to_json(const PortraitCensus& c);
nlohmann::json to_json(const RadiusEvidence& ev);
nlohmann::json to_json(const CenterTestResult& r);
nlohmann::json to_json(const GlobalCenterTestResult& r);
nlohmann::json to_json(const LimitCycleCheck& r);

/// Full classification report: schema, parameters, figure/panel, census,
/// degeneracy flags.
nlohmann::json classification_report(const Parameters& p);

/// Trajectory with summary and samples (t, x, y in real time).
nlohmann::json trajectory_report(const Parameters& p, const Trajectory& traj);

/// Panel segmentation along one parameter axis, with bisected boundaries.
nlohmann::json sweep_report(const Parameters& base, const std::string& param, double from,
                            double to, int steps);

}  // namespace duffing
