#pragma once

#include "duffing/infinity.hpp"
#include "duffing/model.hpp"

#include <functional>
#include <string>
#include <vector>

namespace duffing {

enum class Method { AdaptiveRK, SymplecticLeapfrog };

struct IntegrationOptions {
  Method method = Method::AdaptiveRK;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;  ///< 0 = unlimited; the leapfrog uses it as its fixed step
  double escape_radius = 1e6;
  double max_time = 1e4;  ///< negative integrates the time-reversed flow
};

void validate(const IntegrationOptions& opts);

enum class Termination { TimeExhausted, Escaped, SectionEvent };

struct Sample {
  double t;
  PlaneState state;
};

/// Numeric orbit. Sample times are strictly increasing integration
/// parameters; real time is time_direction * t.
struct Trajectory {
  std::vector<Sample> samples;
  int time_direction = +1;
  Termination termination = Termination::TimeExhausted;
  double escape_time = 0.0;  ///< set when termination == Escaped
  int event_count = 0;       ///< set when termination == SectionEvent
  std::vector<Sample> events;
};

/// Step-size underflow (or an event that never fires in time); carries the
/// partial orbit up to the last accepted step.
class IntegrationFailure : public std::runtime_error {
public:
  IntegrationFailure(const std::string& msg, Trajectory partial)
      : std::runtime_error(msg), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

private:
  Trajectory partial_;
};

/// Directional zero crossing of a scalar section function. Crossings are
/// located on the dense output by bisection to 1e-12 in time.
struct SectionEventSpec {
  std::function<double(double, const PlaneState&)> value;
  int direction = +1;  ///< +1 counts -/+ crossings, -1 counts +/-, 0 both
  int target_count = 1;
};

Trajectory integrate(const Parameters& p, const PlaneState& s0, const IntegrationOptions& opts);

Trajectory integrate_with_events(const Parameters& p, const PlaneState& s0,
                                 const IntegrationOptions& opts, const SectionEventSpec& section);

/// max |H - H(s0)| over the samples; requires alpha = 0.
double energy_drift(const Parameters& p, const Trajectory& traj);

/// CSV with header t,x,y and 17-significant-digit decimals.
std::string trajectory_csv(const Trajectory& traj);

struct DiscSample {
  double t;
  ChartId chart;
  double u;
  double v;
};

struct ChartSwitch {
  double t;
  ChartId from;
  ChartId to;
};

/// Orbit of the compactified field, integrated chart-by-chart across the
/// atlas. The time variable is the chart flow parameter (a positive
/// reparametrization of plane time).
struct DiscTrajectory {
  std::vector<DiscSample> samples;
  std::vector<ChartSwitch> switch_events;
  int time_direction = +1;
  Termination termination = Termination::TimeExhausted;
};

DiscTrajectory integrate_on_disc(const Parameters& p, const PlaneState& s0,
                                 const IntegrationOptions& opts);

/// Start from chart coordinates; v = 0 rows ride the invariant circle.
DiscTrajectory integrate_on_disc(const Parameters& p, ChartId chart, const Eigen::Vector2d& uv0,
                                 const IntegrationOptions& opts);

}  // namespace duffing
