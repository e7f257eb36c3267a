#include "duffing/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace duffing {

CoarseKind coarse(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::StableNode:
    case EquilibriumKind::StableFocus:
      return CoarseKind::Stable;
    case EquilibriumKind::UnstableNode:
    case EquilibriumKind::UnstableFocus:
      return CoarseKind::Unstable;
    case EquilibriumKind::SaddlePoint:
      return CoarseKind::Saddle;
    case EquilibriumKind::Center:
      return CoarseKind::Center;
    case EquilibriumKind::Degenerate:
      break;
  }
  return CoarseKind::Degenerate;
}

const char* to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::SaddlePoint: return "saddle";
    case EquilibriumKind::StableNode: return "stable-node";
    case EquilibriumKind::UnstableNode: return "unstable-node";
    case EquilibriumKind::StableFocus: return "stable-focus";
    case EquilibriumKind::UnstableFocus: return "unstable-focus";
    case EquilibriumKind::Center: return "center";
    case EquilibriumKind::Degenerate: break;
  }
  return "degenerate";
}

const char* to_string(CoarseKind kind) {
  switch (kind) {
    case CoarseKind::Stable: return "stable";
    case CoarseKind::Unstable: return "unstable";
    case CoarseKind::Saddle: return "saddle";
    case CoarseKind::Center: return "center";
    case CoarseKind::Degenerate: break;
  }
  return "degenerate";
}

const char* to_string(EquilibriumLabel label) {
  switch (label) {
    case EquilibriumLabel::Origin: return "origin";
    case EquilibriumLabel::EPlus: return "E+";
    case EquilibriumLabel::EMinus: return "E-";
  }
  return "?";
}

namespace {

/// Unique real odd root of -sigma/epsilon, i.e. |r|^(1/(m-1)) with the sign
/// of -sigma/epsilon. Only meaningful for m > 1.
double odd_root_abscissa(const Parameters& p) {
  const double ratio = -p.sigma / p.epsilon;
  if (ratio == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(ratio), 1.0 / (p.m - 1)), ratio);
}

/// Constant term of the characteristic polynomial lambda^2 + alpha*lambda + c
/// at the labeled rest point. Equals U''(x*) there.
double char_poly_constant(const Parameters& p, EquilibriumLabel label) {
  if (label == EquilibriumLabel::Origin) return p.origin_stiffness();
  return -p.sigma * (p.m - 1);
}

}  // namespace

bool equilibrium_exists(const Parameters& p, EquilibriumLabel label) {
  if (label == EquilibriumLabel::Origin) return true;
  if (p.m == 1 || near_zero(p, p.sigma)) return false;
  if (p.odd_degree()) return p.sigma * p.epsilon < 0.0;
  return label == EquilibriumLabel::EPlus;
}

std::optional<double> equilibrium_abscissa(const Parameters& p, EquilibriumLabel label) {
  if (!equilibrium_exists(p, label)) return std::nullopt;
  if (label == EquilibriumLabel::Origin) return 0.0;
  double root;
  if (p.odd_degree()) {
    root = std::pow(-p.sigma / p.epsilon, 1.0 / (p.m - 1));  // positive branch
    if (label == EquilibriumLabel::EMinus) root = -root;
  } else {
    root = odd_root_abscissa(p);
  }
  return root;
}

std::array<Complex, 2> eigenvalues_at(const Parameters& p, EquilibriumLabel label) {
  if (!equilibrium_exists(p, label))
    throw MissingEquilibrium(std::string(to_string(label)) +
                             " does not exist for these parameters");
  const double c = char_poly_constant(p, label);
  const double disc = p.alpha * p.alpha - 4.0 * c;
  const double half = -0.5 * p.alpha;
  if (disc >= 0.0) {
    const double root = 0.5 * std::sqrt(disc);
    return {Complex(half + root, 0.0), Complex(half - root, 0.0)};
  }
  const double omega = 0.5 * std::sqrt(-disc);
  return {Complex(half, omega), Complex(half, -omega)};
}

EquilibriumKind classify_finite(const Parameters& p, const Equilibrium& e) {
  const double c = char_poly_constant(p, e.label);
  if (near_zero(p, c)) return EquilibriumKind::Degenerate;
  if (c < 0.0) return EquilibriumKind::SaddlePoint;
  // c > 0: the rest point is a strict potential minimum.
  if (near_zero(p, p.alpha)) return EquilibriumKind::Center;
  const double disc = p.alpha * p.alpha - 4.0 * c;
  if (near_zero(p, disc)) return EquilibriumKind::Degenerate;
  if (disc < 0.0)
    return p.alpha > 0.0 ? EquilibriumKind::StableFocus : EquilibriumKind::UnstableFocus;
  return p.alpha > 0.0 ? EquilibriumKind::StableNode : EquilibriumKind::UnstableNode;
}

std::vector<Equilibrium> finite_equilibria(const Parameters& p) {
  std::vector<Equilibrium> out;
  auto push = [&](EquilibriumLabel label) {
    const auto x = equilibrium_abscissa(p, label);
    if (!x) return;
    Equilibrium e;
    e.location = PlaneState(*x, 0.0);
    e.label = label;
    e.eigenvalues = eigenvalues_at(p, label);
    e.kind = classify_finite(p, e);
    out.push_back(e);
  };
  push(EquilibriumLabel::EMinus);
  push(EquilibriumLabel::Origin);
  push(EquilibriumLabel::EPlus);
  std::sort(out.begin(), out.end(), [](const Equilibrium& a, const Equilibrium& b) {
    return a.location.x() < b.location.x();
  });
  return out;
}

bool purely_imaginary_at(const Parameters& p, EquilibriumLabel label) {
  if (p.m == 1)
    throw InvalidParameters("purely_imaginary_at requires m > 1");
  if (!near_zero(p, p.alpha)) return false;
  switch (label) {
    case EquilibriumLabel::Origin: return p.sigma > 0.0;
    case EquilibriumLabel::EPlus: return p.sigma < 0.0;
    case EquilibriumLabel::EMinus:
      return p.odd_degree() ? p.sigma < 0.0 : p.sigma > 0.0;
  }
  return false;
}

CenterVerdict center_at_origin(const Parameters& p) {
  CenterVerdict v;
  const bool alpha_zero = near_zero(p, p.alpha);
  const double stiffness = p.origin_stiffness();
  if (p.m == 1) {
    v.is_local_center = alpha_zero && stiffness > 0.0;
    v.is_global_center = v.is_local_center;
    v.witness = v.is_local_center
                    ? "m=1, alpha=0, epsilon+sigma>0: unique equilibrium, global center"
                    : "m=1: requires alpha=0 and epsilon+sigma>0";
    return v;
  }
  v.is_local_center = alpha_zero && p.sigma > 0.0;
  v.is_global_center =
      v.is_local_center && p.odd_degree() && p.epsilon > 0.0;
  if (v.is_global_center) {
    v.witness = "m odd, sigma>0, epsilon>0, alpha=0: unique linear center, global center";
  } else if (v.is_local_center) {
    v.witness = p.odd_degree()
                    ? "alpha=0, sigma>0: local center at origin (first integral); "
                      "epsilon<0 adds saddles E+-, so not global"
                    : "alpha=0, sigma>0: local center at origin (first integral); "
                      "even degree excludes a global center";
  } else if (!alpha_zero) {
    v.witness = "alpha != 0: divergence -alpha rules out a center";
  } else {
    v.witness = "alpha=0, sigma<=0: origin is not a potential minimum";
  }
  return v;
}

bool has_unique_finite_equilibrium(const Parameters& p) {
  if (p.m == 1) return true;
  return p.odd_degree() && p.sigma * p.epsilon > 0.0;
}

}  // namespace duffing
