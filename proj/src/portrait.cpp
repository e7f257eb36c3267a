#include "duffing/portrait.hpp"

#include <cmath>
#include <sstream>

namespace duffing {

const char* to_string(PortraitFigure f) {
  switch (f) {
    case PortraitFigure::AlphaZero: return "Fig_AlphaZero";
    case PortraitFigure::LinearDegree: return "Fig_M1";
    case PortraitFigure::EvenDegree: return "Fig_MEven";
    case PortraitFigure::OddDegree: return "Fig_MOdd";
  }
  return "?";
}

namespace {

int strict_sign(const Parameters& p, double x) {
  if (near_zero(p, x)) return 0;
  return x > 0.0 ? +1 : -1;
}

PortraitClass panel(PortraitFigure fig, char letter, std::string conditions) {
  PortraitClass pc;
  pc.figure = fig;
  pc.panel = letter;
  pc.conditions = std::move(conditions);
  return pc;
}

PortraitClass boundary(PortraitFigure fig, std::string marker) {
  PortraitClass pc;
  pc.figure = fig;
  pc.boundary = std::move(marker);
  return pc;
}

PortraitClass classify_linear(const Parameters& p) {
  const double s = p.epsilon + p.sigma;
  const int s_sign = strict_sign(p, s);
  const double disc = p.alpha * p.alpha - 4.0 * s;
  if (s_sign == 0)
    return boundary(PortraitFigure::LinearDegree,
                    "epsilon+sigma = 0: line of rest points, outside the panel taxonomy");
  if (near_zero(p, disc)) {
    return p.alpha > 0.0
               ? panel(PortraitFigure::LinearDegree, 'f', "alpha^2 = 4(epsilon+sigma), alpha > 0")
               : panel(PortraitFigure::LinearDegree, 'g', "alpha^2 = 4(epsilon+sigma), alpha < 0");
  }
  if (disc < 0.0) {
    return p.alpha > 0.0
               ? panel(PortraitFigure::LinearDegree, 'a', "alpha^2 < 4(epsilon+sigma), alpha > 0")
               : panel(PortraitFigure::LinearDegree, 'b', "alpha^2 < 4(epsilon+sigma), alpha < 0");
  }
  if (s_sign < 0)
    return panel(PortraitFigure::LinearDegree, 'd', "alpha^2 > 4(epsilon+sigma), epsilon+sigma < 0");
  return p.alpha > 0.0
             ? panel(PortraitFigure::LinearDegree, 'c',
                     "alpha^2 > 4(epsilon+sigma), alpha > 0, epsilon+sigma > 0")
             : panel(PortraitFigure::LinearDegree, 'e',
                     "alpha^2 > 4(epsilon+sigma), alpha < 0, epsilon+sigma > 0");
}

PortraitClass classify_conservative(const Parameters& p) {
  const PortraitFigure fig = PortraitFigure::AlphaZero;
  if (p.m == 1) {
    const int s = strict_sign(p, p.epsilon + p.sigma);
    if (s == 0) return boundary(fig, "alpha = 0, epsilon+sigma = 0: line of rest points");
    if (s < 0) return panel(fig, 'a', "m = 1, alpha = 0, epsilon+sigma < 0");
    return boundary(fig, "uncovered caption corner: m = 1, alpha = 0, epsilon+sigma > 0 "
                         "(global center; no captioned panel)");
  }
  const int sg = strict_sign(p, p.sigma);
  const int eg = p.epsilon > 0.0 ? +1 : -1;
  if (sg == 0) return boundary(fig, "alpha = 0, sigma = 0: degenerate stiffness");
  if (!p.odd_degree()) {
    if (eg < 0 && sg < 0) return panel(fig, 'b', "m even, alpha = 0, epsilon < 0, sigma < 0");
    if (eg > 0 && sg < 0) return panel(fig, 'c', "m even, alpha = 0, epsilon > 0, sigma < 0");
    if (eg < 0 && sg > 0) return panel(fig, 'd', "m even, alpha = 0, epsilon < 0, sigma > 0");
    return panel(fig, 'e', "m even, alpha = 0, epsilon > 0, sigma > 0");
  }
  if (eg < 0 && sg < 0) return panel(fig, 'f', "m odd, alpha = 0, epsilon < 0, sigma < 0");
  if (eg < 0 && sg > 0) return panel(fig, 'g', "m odd, alpha = 0, epsilon < 0, sigma > 0");
  if (eg > 0 && sg < 0) return panel(fig, 'h', "m odd, alpha = 0, epsilon > 0, sigma < 0");
  return boundary(fig, "uncovered caption corner: m odd, alpha = 0, sigma > 0, epsilon > 0 "
                       "(global center; no captioned panel)");
}

PortraitClass classify_sign_grid(const Parameters& p) {
  const PortraitFigure fig =
      p.odd_degree() ? PortraitFigure::OddDegree : PortraitFigure::EvenDegree;
  const int sg = strict_sign(p, p.sigma);
  if (sg == 0) return boundary(fig, "sigma = 0: degenerate stiffness, outside the panel grid");
  const int eg = p.epsilon > 0.0 ? +1 : -1;
  const int ag = p.alpha > 0.0 ? +1 : -1;

  char letter;
  if (sg > 0 && eg > 0) letter = ag > 0 ? 'a' : 'b';
  else if (sg < 0 && eg < 0) letter = ag > 0 ? 'c' : 'd';
  else if (sg > 0 && eg < 0) letter = ag > 0 ? 'e' : 'f';
  else letter = ag > 0 ? 'g' : 'h';

  std::ostringstream cond;
  cond << "sigma " << (sg > 0 ? "> 0" : "< 0") << ", epsilon " << (eg > 0 ? "> 0" : "< 0")
       << ", alpha " << (ag > 0 ? "> 0" : "< 0");
  return panel(fig, letter, cond.str());
}

}  // namespace

PortraitClass classify_portrait(const Parameters& p) {
  PortraitClass pc;
  if (near_zero(p, p.alpha)) {
    pc = classify_conservative(p);
  } else if (p.m == 1) {
    pc = classify_linear(p);
  } else {
    pc = classify_sign_grid(p);
  }
  if (p.m > 1 && p.m != 2 && p.m != 3 && p.m != 5 && !pc.degenerate())
    pc.note = "captioned panels cover m in {2, 3, 5}; assignment extended to m = " +
              std::to_string(p.m) + " by parity";
  return pc;
}

PortraitCensus census(const Parameters& p) {
  PortraitCensus c;
  c.finite = finite_equilibria(p);
  c.infinite = infinite_equilibria(p);
  c.center = center_at_origin(p);
  if (near_zero(p, p.alpha)) c.cycles = detect_connection_cycles(p);

  auto complain = [&](const std::string& msg) { c.inconsistencies.push_back(msg); };

  if (c.center.is_global_center) {
    if (c.finite.size() != 1 || c.finite.front().kind != EquilibriumKind::Center)
      complain("global center verdict without a unique finite center");
    if (p.m > 1) {
      bool two_hyperbolic = !c.infinite.empty() && c.infinite.front().sectors &&
                            *c.infinite.front().sectors == SectorStructure{2, 0, 0};
      if (!two_hyperbolic)
        complain("global center verdict without two hyperbolic sectors at infinity");
    }
  }
  if (c.center.is_local_center) {
    bool origin_imaginary = false;
    for (const Equilibrium& e : c.finite)
      if (e.label == EquilibriumLabel::Origin)
        origin_imaginary = e.eigenvalues[0].real() == 0.0 && e.eigenvalues[0].imag() != 0.0;
    if (!origin_imaginary)
      complain("local center verdict without purely imaginary eigenvalues at the origin");
  }
  for (const Equilibrium& e : c.finite) {
    const double residual = eval_field(p, e.location).norm();
    if (residual > 1e-10 * std::max(1.0, e.location.norm()))
      complain("finite rest point residual above tolerance");
  }
  for (const InfiniteEquilibrium& ie : c.infinite) {
    const Eigen::Vector2d f = chart_field(p, ie.chart, ie.u, 0.0);
    if (f.norm() > 1e-10)
      complain("infinite rest point does not zero the chart field");
  }
  if (c.cycles && c.cycles->kind != CycleKind::NoCycle) {
    for (const PlaneState& s : c.cycles->saddles) {
      bool found = false;
      for (const Equilibrium& e : c.finite)
        if ((e.location - s).norm() < 1e-10 &&
            e.kind == EquilibriumKind::SaddlePoint)
          found = true;
      if (!found) complain("cycle saddle is not a classified saddle point");
      if (std::fabs(potential_energy(p, s.x()) - c.cycles->level) > 1e-10)
        complain("cycle level does not match the potential at its saddle");
    }
  }
  return c;
}

std::string census_signature(const PortraitCensus& c) {
  std::ostringstream sig;
  sig << "finite[";
  for (const Equilibrium& e : c.finite) sig << to_string(coarse(e.kind)) << " ";
  sig << "] infinite[";
  for (const InfiniteEquilibrium& ie : c.infinite) {
    sig << to_string(ie.kind);
    if (ie.sectors)
      sig << "(h" << ie.sectors->hyperbolic << "p" << ie.sectors->parabolic << "e"
          << ie.sectors->elliptic << ")";
    if (ie.stability)
      sig << (*ie.stability == NodeStability::Stable ? "-stable" : "-unstable");
    sig << " ";
  }
  sig << "] cycle:" << (c.cycles ? to_string(c.cycles->kind) : "n/a");
  sig << " center:" << (c.center.is_local_center ? 1 : 0)
      << (c.center.is_global_center ? 1 : 0);
  return sig.str();
}

}  // namespace duffing
