#include "duffing/report.hpp"

#include <json.hpp>

#include <cmath>

namespace duffing {

using nlohmann::json;

json to_json(const Parameters& p) {
  return {{"alpha", p.alpha}, {"epsilon", p.epsilon}, {"sigma", p.sigma}, {"m", p.m}};
}

json to_json(const DegeneracyFlags& f) {
  return {{"sigma_zero", f.sigma_zero},
          {"discriminant_zero", f.discriminant_zero},
          {"on_table_boundary", f.on_table_boundary}};
}

json to_json(const Equilibrium& e) {
  return {{"label", to_string(e.label)},
          {"x", e.location.x()},
          {"y", e.location.y()},
          {"eigenvalues",
           {{e.eigenvalues[0].real(), e.eigenvalues[0].imag()},
            {e.eigenvalues[1].real(), e.eigenvalues[1].imag()}}},
          {"kind", to_string(e.kind)},
          {"stability", to_string(coarse(e.kind))}};
}

json to_json(const SectorStructure& s) {
  return {{"hyperbolic", s.hyperbolic}, {"parabolic", s.parabolic}, {"elliptic", s.elliptic}};
}

json to_json(const InfiniteEquilibrium& e) {
  json j{{"chart", to_string(e.chart)}, {"u", e.u}, {"kind", to_string(e.kind)}};
  if (e.sectors) j["sectors"] = to_json(*e.sectors);
  if (e.stability)
    j["stability"] = *e.stability == NodeStability::Stable ? "stable" : "unstable";
  return j;
}

json to_json(const CenterVerdict& v) {
  return {{"is_local_center", v.is_local_center},
          {"is_global_center", v.is_global_center},
          {"witness", v.witness}};
}

json to_json(const CycleReport& c) {
  json saddles = json::array();
  for (const PlaneState& s : c.saddles) saddles.push_back({{"x", s.x()}, {"y", s.y()}});
  return {{"kind", to_string(c.kind)}, {"saddles", saddles}, {"level", c.level}};
}

json to_json(const PortraitClass& pc) {
  json j{{"figure", to_string(pc.figure)}, {"conditions", pc.conditions}};
  j["panel"] = pc.panel ? json(std::string(1, pc.panel)) : json(nullptr);
  j["boundary"] = pc.boundary ? json(*pc.boundary) : json(nullptr);
  if (pc.note) j["note"] = *pc.note;
  return j;
}

json to_json(const PortraitCensus& c) {
  json finite = json::array();
  for (const Equilibrium& e : c.finite) finite.push_back(to_json(e));
  json infinite = json::array();
  for (const InfiniteEquilibrium& e : c.infinite) infinite.push_back(to_json(e));
  json j{{"finite", finite}, {"infinite", infinite}, {"center", to_json(c.center)}};
  j["cycles"] = c.cycles ? to_json(*c.cycles) : json(nullptr);
  j["inconsistencies"] = c.inconsistencies;
  return j;
}

json to_json(const RadiusEvidence& ev) {
  json j{{"radius", ev.radius}, {"outcome", to_string(ev.outcome)}};
  if (ev.outcome == ReturnOutcome::Closed) {
    j["period"] = ev.period;
    j["encircles_origin"] = ev.encircles_origin;
  } else if (ev.outcome != ReturnOutcome::Escape) {
    j["next_radius"] = ev.next_radius;
  }
  if (!ev.note.empty()) j["note"] = ev.note;
  return j;
}

json to_json(const CenterTestResult& r) {
  json evidence = json::array();
  for (const RadiusEvidence& ev : r.evidence) evidence.push_back(to_json(ev));
  return {{"is_center", r.is_center}, {"evidence", evidence}};
}

json to_json(const GlobalCenterTestResult& r) {
  return {{"is_global_center", r.is_global_center},
          {"unique_equilibrium", r.unique_equilibrium},
          {"infinity_sectors_ok", r.infinity_sectors_ok},
          {"center_test", to_json(r.center)}};
}

json to_json(const LimitCycleCheck& r) {
  json evidence = json::array();
  for (const RadiusEvidence& ev : r.evidence) evidence.push_back(to_json(ev));
  return {{"divergence", r.divergence_value},
          {"divergence_nonzero", r.divergence_nonzero},
          {"no_closed_orbit", r.no_closed_orbit},
          {"passed", r.passed()},
          {"evidence", evidence}};
}

json classification_report(const Parameters& p) {
  const PortraitClass pc = classify_portrait(p);
  const PortraitCensus c = census(p);
  json j{{"schema", kSchemaName},
         {"parameters", to_json(p)},
         {"figure", to_string(pc.figure)},
         {"census", to_json(c)},
         {"degenerate_flags", to_json(degeneracy(p))},
         {"global_center", c.center.is_global_center}};
  j["panel"] = pc.panel ? json(std::string(1, pc.panel)) : json(nullptr);
  j["boundary"] = pc.boundary ? json(*pc.boundary) : json(nullptr);
  j["conditions"] = pc.conditions;
  if (pc.note) j["note"] = *pc.note;
  return j;
}

json trajectory_report(const Parameters& p, const Trajectory& traj) {
  json samples = json::array();
  for (const Sample& s : traj.samples)
    samples.push_back({traj.time_direction * s.t, s.state.x(), s.state.y()});
  json j{{"schema", kSchemaName},
         {"parameters", to_json(p)},
         {"columns", {"t", "x", "y"}},
         {"samples", samples}};
  switch (traj.termination) {
    case Termination::TimeExhausted: j["termination"] = "time-exhausted"; break;
    case Termination::Escaped:
      j["termination"] = "escaped";
      j["escape_time"] = traj.time_direction * traj.escape_time;
      break;
    case Termination::SectionEvent:
      j["termination"] = "section-event";
      j["event_count"] = traj.event_count;
      break;
  }
  return j;
}

json sweep_report(const Parameters& base, const std::string& param, double from, double to,
                  int steps) {
  if (steps < 1) throw InvalidParameters("sweep needs at least one step");
  auto at = [&](double value) {
    double a = base.alpha, e = base.epsilon, s = base.sigma;
    if (param == "alpha") a = value;
    else if (param == "epsilon") e = value;
    else if (param == "sigma") s = value;
    else throw InvalidParameters("sweep parameter must be alpha, epsilon, or sigma");
    return Parameters(a, e, s, base.m);
  };
  auto key = [&](const PortraitClass& pc) {
    std::string k = to_string(pc.figure);
    k += ':';
    k += pc.panel ? pc.panel : '?';
    if (pc.boundary) k += ":" + *pc.boundary;
    return k;
  };

  json points = json::array();
  std::vector<double> values;
  std::vector<std::string> keys;
  for (int i = 0; i <= steps; ++i) {
    const double v = from + (to - from) * i / steps;
    values.push_back(v);
    json entry;
    entry["value"] = v;
    try {
      const PortraitClass pc = classify_portrait(at(v));
      entry["figure"] = to_string(pc.figure);
      entry["panel"] = pc.panel ? json(std::string(1, pc.panel)) : json(nullptr);
      if (pc.boundary) entry["boundary"] = *pc.boundary;
      keys.push_back(key(pc));
    } catch (const InvalidParameters& err) {
      entry["error"] = err.what();
      keys.push_back(std::string("invalid:") + err.what());
    }
    points.push_back(entry);
  }

  json boundaries = json::array();
  for (size_t i = 1; i < keys.size(); ++i) {
    if (keys[i] == keys[i - 1]) continue;
    double lo = values[i - 1], hi = values[i];
    const std::string lo_key = keys[i - 1];
    for (int iter = 0; iter < 60 && hi - lo > 1e-12 * std::max(1.0, std::fabs(hi)); ++iter) {
      const double mid = 0.5 * (lo + hi);
      std::string mid_key;
      try {
        mid_key = key(classify_portrait(at(mid)));
      } catch (const InvalidParameters& err) {
        mid_key = std::string("invalid:") + err.what();
      }
      (mid_key == lo_key ? lo : hi) = mid;
    }
    boundaries.push_back({{"between", {keys[i - 1], keys[i]}},
                          {"location", 0.5 * (lo + hi)}});
  }

  return json{{"schema", kSchemaName},
              {"parameters", to_json(base)},
              {"sweep", {{"param", param}, {"from", from}, {"to", to}, {"steps", steps}}},
              {"points", points},
              {"boundaries", boundaries}};
}

}  // namespace duffing
