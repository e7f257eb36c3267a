#include "duffing/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace duffing {

void validate(const IntegrationOptions& opts) {
  if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0))
    throw InvalidParameters("integration tolerances must be positive");
  if (!(opts.escape_radius > 0.0))
    throw InvalidParameters("escape radius must be positive");
  if (opts.max_step < 0.0)
    throw InvalidParameters("max_step must be nonnegative");
  if (opts.max_time == 0.0 || !std::isfinite(opts.max_time))
    throw InvalidParameters("max_time must be nonzero and finite");
}

namespace {

using Vec2 = Eigen::Vector2d;

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

struct StepRecord {
  double t0;
  Vec2 y0, f0;
  double t1;
  Vec2 y1, f1;
};

Vec2 hermite(const StepRecord& s, double theta) {
  const double dt = s.t1 - s.t0;
  const double a = theta * (theta - 1.0);
  return (1.0 - theta) * s.y0 + theta * s.y1 +
         a * ((1.0 - 2.0 * theta) * (s.y1 - s.y0) + (theta - 1.0) * dt * s.f0 +
              theta * dt * s.f1);
}

enum class StepperStatus { ReachedEnd, VisitorStopped, Underflow };

// Drives the embedded pair from t=0 to t_end > 0. The visitor sees every
// accepted step and returns false to stop.
template <typename Rhs, typename Visitor>
StepperStatus rk45_drive(Rhs rhs, const Vec2& y_start, double t_end, double rel_tol,
                         double abs_tol, double max_step, Visitor visit) {
  double t = 0.0;
  Vec2 y = y_start;
  Vec2 f = rhs(t, y);

  auto error_norm = [&](const Vec2& err, const Vec2& y_old, const Vec2& y_new) {
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = abs_tol + rel_tol * std::max(std::fabs(y_old[i]), std::fabs(y_new[i]));
      const double q = err[i] / sc;
      sum += q * q;
    }
    return std::sqrt(0.5 * sum);
  };

  // Initial step from the local scale of y and f; the controller corrects
  // a poor guess within a few steps.
  double h = std::clamp(0.01 * (y.norm() + 1.0) / (f.norm() + 1.0), 1e-8, 0.1);
  if (max_step > 0.0) h = std::min(h, max_step);
  h = std::min(h, t_end);

  while (t < t_end) {
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(t)))
      return StepperStatus::Underflow;
    bool final_step = false;
    if (t + h >= t_end) {
      h = t_end - t;
      final_step = true;
    }

    const Vec2 k1 = f;
    const Vec2 k2 = rhs(t + kA21 * h, y + h * (kA21 * k1));
    const Vec2 k3 = rhs(t + 0.3 * h, y + h * (kA31 * k1 + kA32 * k2));
    const Vec2 k4 = rhs(t + 0.8 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    const Vec2 k5 =
        rhs(t + 8.0 / 9.0 * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    const Vec2 k6 =
        rhs(t + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
    const Vec2 y_new = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const Vec2 k7 = rhs(t + h, y_new);
    const Vec2 err =
        h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

    const double en = error_norm(err, y, y_new);
    if (en <= 1.0) {
      StepRecord rec{t, y, f, t + h, y_new, k7};
      t += h;
      y = y_new;
      f = k7;  // FSAL
      if (!visit(rec)) return StepperStatus::VisitorStopped;
      if (final_step) return StepperStatus::ReachedEnd;
    }
    const double factor =
        en > 0.0 ? std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0) : 5.0;
    h *= factor;
    if (max_step > 0.0) h = std::min(h, max_step);
  }
  return StepperStatus::ReachedEnd;
}

// Bisection for a scalar function of theta over [lo, hi] with g(lo), g(hi) of
// opposite sign; refines until the time bracket shrinks below time_tol.
template <typename G>
double bisect(G g, double lo, double hi, double g_lo, double dt, double time_tol) {
  for (int i = 0; i < 200 && dt * (hi - lo) > time_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if ((g_lo < 0.0) == (g_mid < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct PlaneRun {
  Trajectory traj;
  bool failed = false;
  std::string failure;
};

PlaneRun run_plane(const Parameters& p, const PlaneState& s0, const IntegrationOptions& opts,
                   const SectionEventSpec* section) {
  validate(opts);
  const int direction = opts.max_time > 0.0 ? +1 : -1;
  const double t_end = std::fabs(opts.max_time);

  if (opts.method == Method::SymplecticLeapfrog && !near_zero(p, p.alpha))
    throw InvalidParameters("the symplectic leapfrog requires alpha = 0");
  if (opts.method == Method::SymplecticLeapfrog && section)
    throw InvalidParameters("section events require the adaptive method");

  PlaneRun run;
  Trajectory& traj = run.traj;
  traj.time_direction = direction;
  traj.samples.push_back({0.0, s0});

  if (opts.method == Method::SymplecticLeapfrog) {
    const double h = opts.max_step > 0.0 ? opts.max_step : 1e-3;
    PlaneState z = s0;
    double accel = -p.epsilon * int_pow(z.x(), p.m) - p.sigma * z.x();
    for (double t = 0.0; t < t_end;) {
      const double step = std::min(h, t_end - t);
      const double hd = direction * step;
      const double x_new = z.x() + hd * z.y() + 0.5 * hd * hd * accel;
      const double accel_new = -p.epsilon * int_pow(x_new, p.m) - p.sigma * x_new;
      const double y_new = z.y() + 0.5 * hd * (accel + accel_new);
      z = PlaneState(x_new, y_new);
      accel = accel_new;
      t += step;
      traj.samples.push_back({t, z});
      if (z.norm() >= opts.escape_radius) {
        traj.termination = Termination::Escaped;
        traj.escape_time = t;
        return run;
      }
    }
    traj.termination = Termination::TimeExhausted;
    return run;
  }

  auto rhs = [&](double, const Vec2& z) -> Vec2 {
    const PlaneState f = eval_field(p, z);
    return direction > 0 ? f : Vec2(-f);
  };

  int crossings = 0;
  double prev_section_sign = 0.0;
  if (section) {
    const double g0 = section->value(0.0, s0);
    prev_section_sign = g0 > 0.0 ? 1.0 : (g0 < 0.0 ? -1.0 : 0.0);
  }

  auto visit = [&](const StepRecord& rec) -> bool {
    // Escape: refine the radius crossing and truncate.
    if (rec.y1.norm() >= opts.escape_radius) {
      auto g = [&](double th) { return hermite(rec, th).norm() - opts.escape_radius; };
      const double g0 = g(0.0);
      double theta = 1.0;
      if (g0 < 0.0) theta = bisect(g, 0.0, 1.0, g0, rec.t1 - rec.t0, 1e-12);
      const double tc = rec.t0 + theta * (rec.t1 - rec.t0);
      traj.samples.push_back({tc, hermite(rec, theta)});
      traj.termination = Termination::Escaped;
      traj.escape_time = tc;
      return false;
    }

    if (section) {
      const double g1 = section->value(rec.t1, rec.y1);
      const double sign1 = g1 > 0.0 ? 1.0 : (g1 < 0.0 ? -1.0 : 0.0);
      const bool crossed = prev_section_sign != 0.0 && sign1 != 0.0 &&
                           sign1 != prev_section_sign;
      const bool wanted = section->direction == 0 ||
                          (section->direction > 0 ? sign1 > 0.0 : sign1 < 0.0);
      if (crossed && wanted) {
        auto g = [&](double th) { return section->value(rec.t0 + th * (rec.t1 - rec.t0),
                                                        hermite(rec, th)); };
        const double theta =
            bisect(g, 0.0, 1.0, g(0.0), rec.t1 - rec.t0,
                   1e-12 * std::max(1.0, std::fabs(rec.t1)));
        const double tc = rec.t0 + theta * (rec.t1 - rec.t0);
        const Sample hit{tc, hermite(rec, theta)};
        traj.events.push_back(hit);
        if (++crossings >= section->target_count) {
          traj.samples.push_back(hit);
          traj.termination = Termination::SectionEvent;
          traj.event_count = crossings;
          return false;
        }
      }
      if (sign1 != 0.0) prev_section_sign = sign1;
    }

    traj.samples.push_back({rec.t1, rec.y1});
    return true;
  };

  const StepperStatus status = rk45_drive(rhs, s0, t_end, opts.rel_tol, opts.abs_tol,
                                          opts.max_step, visit);
  if (status == StepperStatus::Underflow) {
    run.failed = true;
    run.failure = "step size underflow at t = " +
                  std::to_string(traj.samples.back().t);
    return run;
  }
  if (status == StepperStatus::ReachedEnd) traj.termination = Termination::TimeExhausted;
  traj.event_count = crossings;
  return run;
}

}  // namespace

Trajectory integrate(const Parameters& p, const PlaneState& s0, const IntegrationOptions& opts) {
  PlaneRun run = run_plane(p, s0, opts, nullptr);
  if (run.failed) throw IntegrationFailure(run.failure, std::move(run.traj));
  return std::move(run.traj);
}

Trajectory integrate_with_events(const Parameters& p, const PlaneState& s0,
                                 const IntegrationOptions& opts,
                                 const SectionEventSpec& section) {
  if (!section.value) throw InvalidParameters("section event needs a value function");
  PlaneRun run = run_plane(p, s0, opts, &section);
  if (run.failed) throw IntegrationFailure(run.failure, std::move(run.traj));
  return std::move(run.traj);
}

double energy_drift(const Parameters& p, const Trajectory& traj) {
  if (!near_zero(p, p.alpha))
    throw InvalidParameters("energy drift is defined for the conservative case alpha = 0");
  if (traj.samples.empty()) return 0.0;
  const double h0 = total_energy(p, traj.samples.front().state);
  double drift = 0.0;
  for (const Sample& s : traj.samples)
    drift = std::max(drift, std::fabs(total_energy(p, s.state) - h0));
  return drift;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,x,y\n";
  char line[96];
  for (const Sample& s : traj.samples) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n",
                  traj.time_direction * s.t, s.state.x(), s.state.y());
    out += line;
  }
  return out;
}

namespace {

bool is_x_type(ChartId c) { return c == ChartId::U1 || c == ChartId::V1; }

// Chosen so that leaving a chart re-enters the next one well inside its
// working region (switch out at 2, back in at 1.5).
constexpr double kChartEnter = 2.0;
constexpr double kChartExit = 1.0 / 1.5;

ChartId pick_infinity_chart(const PlaneState& s) {
  if (std::fabs(s.x()) >= std::fabs(s.y()))
    return s.x() > 0.0 ? ChartId::U1 : ChartId::V1;
  return s.y() > 0.0 ? ChartId::U2 : ChartId::V2;
}

// Transition between an x-type and a y-type chart: (u, v) -> (1/u, v/u),
// valid on the infinite circle as well.
ChartId complementary_chart(ChartId from, double u, double v) {
  if (v != 0.0) {
    const double v_new = v / u;
    if (is_x_type(from)) return v_new > 0.0 ? ChartId::U2 : ChartId::V2;
    return v_new > 0.0 ? ChartId::U1 : ChartId::V1;
  }
  // On the circle the target follows from the direction the point represents.
  if (from == ChartId::U1) return u > 0.0 ? ChartId::U2 : ChartId::V2;
  if (from == ChartId::V1) return u > 0.0 ? ChartId::V2 : ChartId::U2;
  if (from == ChartId::U2) return u > 0.0 ? ChartId::U1 : ChartId::V1;
  return u > 0.0 ? ChartId::V1 : ChartId::U1;
}

}  // namespace

namespace {

DiscTrajectory run_disc(const Parameters& p, ChartId chart0, const Vec2& z0,
                        const IntegrationOptions& opts) {
  validate(opts);
  if (opts.method != Method::AdaptiveRK)
    throw InvalidParameters("disc integration uses the adaptive method");
  const int direction = opts.max_time > 0.0 ? +1 : -1;
  const double t_end = std::fabs(opts.max_time);

  DiscTrajectory disc;
  disc.time_direction = direction;

  ChartId chart = chart0;
  Vec2 z = z0;
  double t = 0.0;
  disc.samples.push_back({t, chart, z.x(), z.y()});

  while (t < t_end) {
    auto rhs = [&](double, const Vec2& w) -> Vec2 {
      const Vec2 f = chart_field(p, chart, w.x(), w.y());
      return direction > 0 ? f : Vec2(-f);
    };

    const double segment_start = t;
    bool switched = false;
    auto visit = [&](const StepRecord& rec) -> bool {
      t = segment_start + rec.t1;
      z = rec.y1;
      disc.samples.push_back({t, chart, z.x(), z.y()});

      ChartId next = chart;
      Vec2 z_next = z;
      if (chart == ChartId::PlaneU3) {
        if (std::max(std::fabs(z.x()), std::fabs(z.y())) > kChartEnter) {
          next = pick_infinity_chart(PlaneState(z));
          z_next = to_chart(PlaneState(z), next);
        }
      } else if (std::fabs(z.y()) > kChartExit) {
        next = ChartId::PlaneU3;
        z_next = from_chart(z, chart);
      } else if (std::fabs(z.x()) > kChartEnter) {
        next = complementary_chart(chart, z.x(), z.y());
        z_next = Vec2(1.0 / z.x(), z.y() / z.x());
      }
      if (next != chart) {
        disc.switch_events.push_back({t, chart, next});
        chart = next;
        z = z_next;
        disc.samples.push_back({t, chart, z.x(), z.y()});
        switched = true;
        return false;  // restart the stepper in the new chart
      }
      return true;
    };

    const double remaining = t_end - t;
    const StepperStatus status = rk45_drive(rhs, z, remaining, opts.rel_tol, opts.abs_tol,
                                            opts.max_step, visit);
    if (status == StepperStatus::Underflow)
      throw IntegrationFailure("step size underflow on the disc at t = " + std::to_string(t),
                               Trajectory{});
    if (status == StepperStatus::ReachedEnd) break;
    if (!switched) break;  // visitor stopped without a switch: nothing to continue
  }
  disc.termination = Termination::TimeExhausted;
  return disc;
}

}  // namespace

DiscTrajectory integrate_on_disc(const Parameters& p, const PlaneState& s0,
                                 const IntegrationOptions& opts) {
  ChartId chart = ChartId::PlaneU3;
  Vec2 z = s0;
  if (std::max(std::fabs(s0.x()), std::fabs(s0.y())) > kChartEnter) {
    chart = pick_infinity_chart(s0);
    z = to_chart(s0, chart);
  }
  return run_disc(p, chart, z, opts);
}

DiscTrajectory integrate_on_disc(const Parameters& p, ChartId chart, const Eigen::Vector2d& uv0,
                                 const IntegrationOptions& opts) {
  return run_disc(p, chart, uv0, opts);
}

}  // namespace duffing
