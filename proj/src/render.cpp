#include "duffing/render.hpp"

#include "duffing/equilibria.hpp"
#include "duffing/integrate.hpp"
#include "duffing/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace duffing {

namespace {

struct Canvas {
  int radius_px;
  int margin = 24;
  int size() const { return 2 * (radius_px + margin); }
  double cx() const { return radius_px + margin; }
  double cy() const { return radius_px + margin; }

  // Bounded radial map r -> r/(1+r); the unit circle is infinity.
  std::pair<double, double> project(const PlaneState& s) const {
    const double r = s.norm();
    const double scale = radius_px / (1.0 + r);
    return {cx() + scale * s.x(), cy() - scale * s.y()};
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* kind_color(EquilibriumKind k) {
  switch (coarse(k)) {
    case CoarseKind::Center: return "#2e9e4f";
    case CoarseKind::Saddle: return "#d1342b";
    case CoarseKind::Stable: return "#2457c5";
    case CoarseKind::Unstable: return "#e07b00";
    case CoarseKind::Degenerate: break;
  }
  return "#777777";
}

std::vector<PlaneState> auto_seeds(const PortraitCensus& census) {
  std::vector<PlaneState> seeds;
  for (double s : {0.35, 0.8, 1.35, 2.1, 3.2, 5.0}) {
    seeds.emplace_back(s, 0.0);
    seeds.emplace_back(-s, 0.0);
  }
  for (const Equilibrium& e : census.finite) {
    if (e.location.x() != 0.0) {
      seeds.emplace_back(e.location.x() + 0.22, 0.0);
      seeds.emplace_back(e.location.x() - 0.22, 0.0);
    }
    seeds.emplace_back(e.location.x(), 0.45);
  }
  if (census.cycles && census.cycles->kind != CycleKind::NoCycle) {
    for (const PlaneState& s : census.cycles->saddles) {
      seeds.emplace_back(s.x() + 0.03, 0.0);
      seeds.emplace_back(s.x() - 0.03, 0.0);
      seeds.emplace_back(s.x(), 0.03);
    }
  }
  // Drop seeds sitting on a rest point.
  std::vector<PlaneState> keep;
  for (const PlaneState& s : seeds) {
    bool on_equilibrium = false;
    for (const Equilibrium& e : census.finite)
      if ((e.location - s).norm() < 1e-3) on_equilibrium = true;
    if (!on_equilibrium) keep.push_back(s);
  }
  return keep;
}

struct OrbitPath {
  std::vector<std::pair<double, double>> points;  // projected px
  bool truncated = false;
};

OrbitPath trace(const Parameters& p, const PlaneState& seed, double t_max, const Canvas& canvas) {
  OrbitPath path;
  IntegrationOptions opts;
  opts.rel_tol = 1e-8;
  opts.abs_tol = 1e-10;
  opts.escape_radius = 1e4;
  opts.max_time = t_max;  // signed: negative traces the backward branch
  Trajectory traj;
  try {
    traj = integrate(p, seed, opts);
  } catch (const IntegrationFailure& f) {
    traj = f.partial();
    path.truncated = true;
  }
  double last_px = 1e9, last_py = 1e9;
  for (const Sample& s : traj.samples) {
    auto [px, py] = canvas.project(s.state);
    if (std::hypot(px - last_px, py - last_py) < 1.0 && &s != &traj.samples.back()) continue;
    path.points.emplace_back(px, py);
    last_px = px;
    last_py = py;
    if (path.points.size() > 2500) break;
  }
  return path;
}

}  // namespace

std::string render_disc(const Parameters& p, const RenderSpec& spec) {
  if (spec.disc_radius_px <= 0) throw InvalidParameters("disc radius must be positive");
  if (!(spec.arrow_density >= 0.0)) throw InvalidParameters("arrow density must be >= 0");
  const Canvas canvas{spec.disc_radius_px};
  const PortraitCensus cens = census(p);
  const std::vector<PlaneState> seeds =
      spec.orbit_seeds ? *spec.orbit_seeds : auto_seeds(cens);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << canvas.size() << "\" height=\"" << canvas.size() << "\" viewBox=\"0 0 "
      << canvas.size() << " " << canvas.size() << "\">\n";
  svg << "<desc>phase portrait: alpha=" << p.alpha << " epsilon=" << p.epsilon
      << " sigma=" << p.sigma << " m=" << p.m << "</desc>\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  bool any_truncated = false;
  std::ostringstream orbits;
  for (const PlaneState& seed : seeds) {
    for (double t_max : {40.0, -40.0}) {
      const OrbitPath path = trace(p, seed, t_max, canvas);
      any_truncated = any_truncated || path.truncated;
      if (path.points.size() < 2) continue;
      orbits << "<polyline fill=\"none\" stroke=\"#51606f\" stroke-width=\"1\" points=\"";
      for (const auto& [px, py] : path.points) orbits << fmt(px) << "," << fmt(py) << " ";
      orbits << "\"/>\n";
      if (spec.arrow_density > 0.0 && t_max > 0.0) {
        // One arrowhead partway along the drawn path.
        const double spacing = canvas.radius_px / (1.0 + 10.0 * spec.arrow_density);
        double acc = 0.0;
        for (size_t i = 1; i < path.points.size(); ++i) {
          const auto& [x0, y0] = path.points[i - 1];
          const auto& [x1, y1] = path.points[i];
          acc += std::hypot(x1 - x0, y1 - y0);
          if (acc < spacing) continue;
          acc = 0.0;
          const double ang = std::atan2(y1 - y0, x1 - x0);
          const double ax = x1, ay = y1, sz = 4.0;
          orbits << "<path fill=\"#51606f\" d=\"M" << fmt(ax) << " " << fmt(ay) << " L"
                 << fmt(ax - sz * std::cos(ang - 0.4)) << " "
                 << fmt(ay - sz * std::sin(ang - 0.4)) << " L"
                 << fmt(ax - sz * std::cos(ang + 0.4)) << " "
                 << fmt(ay - sz * std::sin(ang + 0.4)) << " Z\"/>\n";
        }
      }
    }
  }
  svg << orbits.str();

  if (spec.draw_infinite_circle) {
    svg << "<circle cx=\"" << fmt(canvas.cx()) << "\" cy=\"" << fmt(canvas.cy())
        << "\" r=\"" << canvas.radius_px
        << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
  }

  // Infinite rest points as boundary ticks (point and antipode).
  for (const InfiniteEquilibrium& ie : cens.infinite) {
    Eigen::Vector2d dir;
    if (ie.chart == ChartId::U1 || ie.chart == ChartId::V1)
      dir = Eigen::Vector2d(1.0, ie.u).normalized();
    else
      dir = Eigen::Vector2d(ie.u, 1.0).normalized();
    if (ie.chart == ChartId::V1 || ie.chart == ChartId::V2) dir = -dir;
    for (int sign : {+1, -1}) {
      const double bx = canvas.cx() + sign * dir.x() * canvas.radius_px;
      const double by = canvas.cy() - sign * dir.y() * canvas.radius_px;
      const double ex = canvas.cx() + sign * dir.x() * (canvas.radius_px + 9.0);
      const double ey = canvas.cy() - sign * dir.y() * (canvas.radius_px + 9.0);
      svg << "<line x1=\"" << fmt(bx) << "\" y1=\"" << fmt(by) << "\" x2=\"" << fmt(ex)
          << "\" y2=\"" << fmt(ey) << "\" stroke=\"#8a2be2\" stroke-width=\"2.5\"/>\n";
    }
  }

  for (const Equilibrium& e : cens.finite) {
    auto [px, py] = canvas.project(e.location);
    svg << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
        << "\" r=\"4\" fill=\"" << kind_color(e.kind) << "\" stroke=\"black\" "
        << "stroke-width=\"0.8\"/>\n";
  }

  if (any_truncated)
    svg << "<text x=\"" << canvas.margin << "\" y=\"" << canvas.size() - 8
        << "\" font-size=\"12\" fill=\"#b00000\">warning: some orbits truncated "
        << "(integration failure)</text>\n";

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace duffing
