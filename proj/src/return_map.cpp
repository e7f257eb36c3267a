#include "duffing/return_map.hpp"

#include "duffing/infinity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace duffing {

const char* to_string(ReturnOutcome o) {
  switch (o) {
    case ReturnOutcome::Closed: return "closed";
    case ReturnOutcome::SpiralIn: return "spiral-in";
    case ReturnOutcome::SpiralOut: return "spiral-out";
    case ReturnOutcome::Escape: return "escape";
  }
  return "?";
}

const char* to_string(CycleKind k) {
  switch (k) {
    case CycleKind::NoCycle: return "none";
    case CycleKind::Homoclinic: return "homoclinic";
    case CycleKind::Heteroclinic: return "heteroclinic";
    case CycleKind::DoubleHomoclinic: return "double-homoclinic";
  }
  return "?";
}

ReturnMapResult poincare_return(const Parameters& p, double r, const ReturnMapOptions& opts) {
  if (!(r > 0.0)) throw InvalidParameters("return map radius must be positive");
  const PlaneState start(r, 0.0);
  for (const Equilibrium& e : finite_equilibria(p))
    if ((e.location - start).norm() <= 1e-8 * std::max(1.0, r))
      throw EquilibriumStart("(r, 0) is a rest point of the flow");

  const double ydot0 = eval_field(p, start).y();
  SectionEventSpec section;
  section.value = [](double, const PlaneState& s) { return s.y(); };
  section.direction = ydot0 > 0.0 ? +1 : -1;
  section.target_count = 1;

  IntegrationOptions iopts;
  iopts.rel_tol = opts.rel_tol;
  iopts.abs_tol = opts.abs_tol;
  iopts.escape_radius = opts.escape_radius;
  iopts.max_time = opts.max_time;

  const Trajectory traj = integrate_with_events(p, start, iopts, section);

  double min_x = r;
  for (const Sample& s : traj.samples) min_x = std::min(min_x, s.state.x());

  ReturnMapResult res;
  res.encircles_origin = min_x < 0.0;

  if (traj.termination == Termination::SectionEvent) {
    const Sample& hit = traj.samples.back();
    res.section_point = hit.state;
    const double ret = hit.state.x();
    if (std::fabs(ret - r) <= opts.closure_tol * std::max(1.0, r)) {
      res.outcome = ReturnOutcome::Closed;
      res.period = hit.t;
    } else if (ret < r) {
      res.outcome = ReturnOutcome::SpiralIn;
      res.next_radius = ret;
    } else {
      res.outcome = ReturnOutcome::SpiralOut;
      res.next_radius = ret;
    }
    return res;
  }
  if (traj.termination == Termination::Escaped) {
    res.outcome = ReturnOutcome::Escape;
    res.section_point = traj.samples.back().state;
    return res;
  }

  // Time budget exhausted without a matching crossing. A damped node sinks
  // into a rest point without ever re-crossing the section; report that as
  // an inward spiral. Anything else is a genuine failure.
  const PlaneState last = traj.samples.back().state;
  for (const Equilibrium& e : finite_equilibria(p)) {
    if ((last - e.location).norm() <= 1e-3 * std::max(1.0, r)) {
      res.outcome = ReturnOutcome::SpiralIn;
      res.next_radius = (last - e.location).norm();
      res.section_point = last;
      return res;
    }
  }
  throw IntegrationFailure("no section return within the time budget", traj);
}

CenterTestResult numeric_center_test(const Parameters& p, const std::vector<double>& radii,
                                     const ReturnMapOptions& opts) {
  CenterTestResult out;
  out.is_center = true;
  for (double r : radii) {
    RadiusEvidence ev;
    ev.radius = r;
    try {
      const ReturnMapResult res = poincare_return(p, r, opts);
      ev.outcome = res.outcome;
      ev.next_radius = res.next_radius;
      ev.period = res.period;
      ev.encircles_origin = res.encircles_origin;
      if (res.outcome != ReturnOutcome::Closed) {
        out.is_center = false;
      } else if (!res.encircles_origin) {
        out.is_center = false;
        ev.note = "closed loop does not encircle the origin";
      }
    } catch (const EquilibriumStart&) {
      ev.note = "radius coincides with a rest point";
      out.is_center = false;
    }
    out.evidence.push_back(ev);
  }
  return out;
}

std::vector<double> center_test_radii(const Parameters& p, std::vector<double> base) {
  if (!near_zero(p, p.alpha)) return base;

  const CycleReport cycle = detect_connection_cycles(p);
  double bound = std::numeric_limits<double>::infinity();
  if (cycle.kind != CycleKind::NoCycle) {
    // Positive abscissa where the connection level set meets the x-axis on
    // the origin side; no clamp when the saddle sits at the origin itself.
    double saddle_x = std::numeric_limits<double>::infinity();
    for (const PlaneState& s : cycle.saddles)
      if (s.x() > 0.0) saddle_x = std::min(saddle_x, s.x());
    if (std::isfinite(saddle_x)) {
      bound = saddle_x;
    } else {
      bool origin_saddle = false;
      for (const PlaneState& s : cycle.saddles)
        if (std::fabs(s.x()) < 1e-14) origin_saddle = true;
      if (!origin_saddle) {
        // Saddle at negative x; the loop crosses the positive axis where U
        // climbs back to the connection level.
        double lo = 0.0, hi = 1.0;
        while (potential_energy(p, hi) < cycle.level && hi < 1e8) hi *= 2.0;
        for (int i = 0; i < 200; ++i) {
          const double mid = 0.5 * (lo + hi);
          (potential_energy(p, mid) < cycle.level ? lo : hi) = mid;
        }
        bound = lo;
      }
    }
  }
  if (std::isfinite(bound) && !base.empty()) {
    const double widest = *std::max_element(base.begin(), base.end());
    if (widest >= 0.9 * bound) {
      const double scale = 0.9 * bound / widest;
      for (double& r : base) r *= scale;
    }
  }
  // Steer off rest points.
  for (double& r : base)
    for (const Equilibrium& e : finite_equilibria(p))
      if (std::fabs(e.location.x() - r) <= 1e-6 * std::max(1.0, r)) r *= 0.97;
  return base;
}

GlobalCenterTestResult numeric_global_center_test(const Parameters& p,
                                                  const ReturnMapOptions& opts) {
  GlobalCenterTestResult out;
  out.unique_equilibrium = has_unique_finite_equilibrium(p);
  if (p.m > 1) {
    try {
      out.infinity_sectors_ok =
          sector_structure_at_infinity(p) == SectorStructure{2, 0, 0};
    } catch (const InvalidParameters&) {
      out.infinity_sectors_ok = false;
    }
  } else {
    out.infinity_sectors_ok = infinite_equilibria(p).empty();
  }
  if (out.unique_equilibrium && out.infinity_sectors_ok) {
    ReturnMapOptions wide = opts;
    // High degrees reach enormous velocities at the largest radius; keep the
    // escape radius above the energy shell through (100, 0).
    const double top_speed = std::sqrt(2.0 * std::fabs(potential_energy(p, 100.0)));
    wide.escape_radius = std::max(wide.escape_radius, 4.0 * top_speed);
    out.center = numeric_center_test(p, {0.1, 1.0, 5.0, 20.0, 100.0}, wide);
  }
  out.is_global_center =
      out.unique_equilibrium && out.infinity_sectors_ok && out.center.is_center;
  return out;
}

CycleReport detect_connection_cycles(const Parameters& p) {
  if (!near_zero(p, p.alpha))
    throw InvalidParameters("connection cycles exist only for alpha = 0");
  CycleReport rep;
  if (p.m == 1 || near_zero(p, p.sigma)) return rep;

  if (!p.odd_degree()) {
    // The potential has exactly one maximum: at the origin when sigma < 0,
    // at the nonzero rest point otherwise.
    double saddle_x = 0.0;
    if (p.sigma > 0.0)
      saddle_x = *equilibrium_abscissa(p, EquilibriumLabel::EPlus);
    rep.kind = CycleKind::Homoclinic;
    rep.saddles = {PlaneState(saddle_x, 0.0)};
    rep.level = potential_energy(p, saddle_x);
    return rep;
  }
  if (p.sigma > 0.0 && p.epsilon < 0.0) {
    const double q = *equilibrium_abscissa(p, EquilibriumLabel::EPlus);
    rep.kind = CycleKind::Heteroclinic;
    rep.saddles = {PlaneState(-q, 0.0), PlaneState(q, 0.0)};
    rep.level = potential_energy(p, q);
    return rep;
  }
  if (p.sigma < 0.0 && p.epsilon > 0.0) {
    rep.kind = CycleKind::DoubleHomoclinic;
    rep.saddles = {PlaneState(0.0, 0.0)};
    rep.level = 0.0;
    return rep;
  }
  return rep;  // m odd with sigma*epsilon > 0: no saddle, no cycle
}

LimitCycleCheck limit_cycle_absence_check(const Parameters& p, const std::vector<double>& radii,
                                          const ReturnMapOptions& opts) {
  if (near_zero(p, p.alpha))
    throw InvalidParameters("the limit-cycle check applies to alpha != 0");
  LimitCycleCheck check;
  check.divergence_value = divergence(p);
  check.divergence_nonzero = check.divergence_value == -p.alpha && p.alpha != 0.0;
  check.no_closed_orbit = true;
  for (double r : radii) {
    RadiusEvidence ev;
    ev.radius = r;
    try {
      const ReturnMapResult res = poincare_return(p, r, opts);
      ev.outcome = res.outcome;
      ev.next_radius = res.next_radius;
      ev.period = res.period;
      if (res.outcome == ReturnOutcome::Closed) check.no_closed_orbit = false;
    } catch (const EquilibriumStart&) {
      ev.note = "radius coincides with a rest point; skipped";
    }
    check.evidence.push_back(ev);
  }
  return check;
}

}  // namespace duffing
