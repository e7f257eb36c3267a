#include "duffing/infinity.hpp"

#include <cmath>
#include <string>

namespace duffing {

const char* to_string(ChartId c) {
  switch (c) {
    case ChartId::U1: return "U1";
    case ChartId::U2: return "U2";
    case ChartId::V1: return "V1";
    case ChartId::V2: return "V2";
    case ChartId::PlaneU3: return "plane";
  }
  return "?";
}

const char* to_string(InfiniteKind k) {
  switch (k) {
    case InfiniteKind::Saddle: return "saddle";
    case InfiniteKind::StableNode: return "stable-node";
    case InfiniteKind::UnstableNode: return "unstable-node";
    case InfiniteKind::SaddleNode: return "saddle-node";
    case InfiniteKind::LinearlyZero: return "linearly-zero";
    case InfiniteKind::Nilpotent: return "nilpotent";
  }
  return "?";
}

Eigen::Vector2d to_chart(const PlaneState& s, ChartId c) {
  const double x = s.x();
  const double y = s.y();
  switch (c) {
    case ChartId::U1:
      if (!(x > 0.0)) throw OutOfChart("U1 requires x > 0");
      return {y / x, 1.0 / x};
    case ChartId::V1:
      if (!(x < 0.0)) throw OutOfChart("V1 requires x < 0");
      return {y / x, 1.0 / x};
    case ChartId::U2:
      if (!(y > 0.0)) throw OutOfChart("U2 requires y > 0");
      return {x / y, 1.0 / y};
    case ChartId::V2:
      if (!(y < 0.0)) throw OutOfChart("V2 requires y < 0");
      return {x / y, 1.0 / y};
    case ChartId::PlaneU3:
      return s;
  }
  throw OutOfChart("unknown chart");
}

PlaneState from_chart(const Eigen::Vector2d& uv, ChartId c) {
  const double u = uv.x();
  const double v = uv.y();
  switch (c) {
    case ChartId::U1:
      if (!(v > 0.0)) throw OutOfChart("U1 requires v > 0 off the infinite circle");
      return {1.0 / v, u / v};
    case ChartId::V1:
      if (!(v < 0.0)) throw OutOfChart("V1 requires v < 0 off the infinite circle");
      return {1.0 / v, u / v};
    case ChartId::U2:
      if (!(v > 0.0)) throw OutOfChart("U2 requires v > 0 off the infinite circle");
      return {u / v, 1.0 / v};
    case ChartId::V2:
      if (!(v < 0.0)) throw OutOfChart("V2 requires v < 0 off the infinite circle");
      return {u / v, 1.0 / v};
    case ChartId::PlaneU3:
      return uv;
  }
  throw OutOfChart("unknown chart");
}

Eigen::Vector2d chart_field(const Parameters& p, ChartId c, double u, double v) {
  const int m = p.m;
  double du = 0.0, dv = 0.0;
  switch (c) {
    case ChartId::U1:
    case ChartId::V1: {
      const double vm1 = int_pow(v, m - 1);
      du = -p.epsilon - (p.sigma + p.alpha * u + u * u) * vm1;
      dv = -u * vm1 * v;
      break;
    }
    case ChartId::U2:
    case ChartId::V2: {
      const double vm1 = int_pow(v, m - 1);
      du = p.epsilon * int_pow(u, m + 1) + (1.0 + p.alpha * u + p.sigma * u * u) * vm1;
      dv = p.epsilon * int_pow(u, m) * v + (p.alpha + p.sigma * u) * vm1 * v;
      break;
    }
    case ChartId::PlaneU3: {
      const PlaneState f = eval_field(p, PlaneState(u, v));
      return f;
    }
  }
  // V-chart expressions carry the (-1)^(n-1) factor, n = m.
  if ((c == ChartId::V1 || c == ChartId::V2) && m % 2 == 0) {
    du = -du;
    dv = -dv;
  }
  return {du, dv};
}

SectorStructure sector_structure_at_infinity(const Parameters& p) {
  if (p.m == 1)
    throw InvalidParameters("sector structure is defined for m > 1");
  if (near_zero(p, p.sigma))
    throw InvalidParameters("sector structure is undefined for sigma = 0");
  if (!p.odd_degree()) return {.hyperbolic = 0, .parabolic = 3, .elliptic = 0};
  if (p.epsilon > 0.0) return {.hyperbolic = 2, .parabolic = 0, .elliptic = 0};
  if (p.sigma < 0.0) return {.hyperbolic = 0, .parabolic = 2, .elliptic = 2};
  return {.hyperbolic = 0, .parabolic = 4, .elliptic = 2};
}

std::vector<InfiniteEquilibrium> infinite_equilibria(const Parameters& p) {
  std::vector<InfiniteEquilibrium> out;
  if (p.m > 1) {
    InfiniteEquilibrium e;
    e.chart = ChartId::U2;
    e.u = 0.0;
    e.kind = p.odd_degree() ? InfiniteKind::LinearlyZero : InfiniteKind::Nilpotent;
    if (!near_zero(p, p.sigma)) e.sectors = sector_structure_at_infinity(p);
    if (!p.odd_degree())
      e.stability = p.epsilon > 0.0 ? NodeStability::Unstable : NodeStability::Stable;
    out.push_back(e);
    return out;
  }

  // m = 1: roots of u^2 + alpha*u + epsilon + sigma in U1.
  const double disc = p.alpha * p.alpha - 4.0 * (p.epsilon + p.sigma);
  if (near_zero(p, disc)) {
    out.push_back({ChartId::U1, -0.5 * p.alpha, InfiniteKind::SaddleNode, {}, {}});
    return out;
  }
  if (disc < 0.0) return out;

  const double root = std::sqrt(disc);
  // Jacobian at P+- is diag(-/+ sqrt(disc), (alpha -/+ sqrt(disc))/2).
  auto kind_of = [&](double lambda_u, double lambda_v) {
    if (near_zero(p, lambda_v)) return InfiniteKind::SaddleNode;
    if (lambda_u * lambda_v < 0.0) return InfiniteKind::Saddle;
    return lambda_u > 0.0 ? InfiniteKind::UnstableNode : InfiniteKind::StableNode;
  };
  out.push_back({ChartId::U1, 0.5 * (-p.alpha + root),
                 kind_of(-root, 0.5 * (p.alpha - root)), {}, {}});
  out.push_back({ChartId::U1, 0.5 * (-p.alpha - root),
                 kind_of(root, 0.5 * (p.alpha + root)), {}, {}});
  return out;
}

BlowupBranch BlowupBranch::for_degree(int m, BlowupDirection d) {
  if (m < 2)
    throw InvalidParameters("the weighted blow-up applies to degrees m > 1");
  BlowupBranch b;
  b.direction = d;
  b.even_m = m % 2 == 0;
  b.n = b.even_m ? m / 2 : (m - 1) / 2;
  return b;
}

BlowupWeights blowup_weights(const BlowupBranch& b) {
  if (b.even_m)
    return {2 * b.n, 2 * b.n - 1, 4 * b.n * b.n - 6 * b.n + 1};
  return {b.n + 1, b.n, 2 * b.n * b.n - b.n - 1};
}

namespace {

bool is_x_branch(BlowupDirection d) {
  return d == BlowupDirection::XPlus || d == BlowupDirection::XMinus;
}

double branch_sign(BlowupDirection d) {
  return (d == BlowupDirection::XPlus || d == BlowupDirection::YPlus) ? 1.0 : -1.0;
}

void check_parity(const Parameters& p, const BlowupBranch& b) {
  if (b.even_m != !p.odd_degree() || b.degree() != p.m)
    throw ParityMismatch("blow-up branch does not match the degree of the field");
}

}  // namespace

Eigen::Vector2d blowup_field(const Parameters& p, const BlowupBranch& b, double rho, double w) {
  check_parity(p, b);
  const double s = branch_sign(b.direction);
  const int n = b.n;
  const double a = p.alpha, e = p.epsilon, g = p.sigma;

  if (b.even_m) {
    if (is_x_branch(b.direction)) {
      const double vb = w;
      const double vb2n1 = int_pow(vb, 2 * n - 1);
      const double vb2n = vb2n1 * vb;
      const double drho = (e * int_pow(rho, 6 * n) + s * rho * vb2n1 +
                           a * int_pow(rho, 2 * n + 1) * vb2n1 +
                           s * g * int_pow(rho, 4 * n + 1) * vb2n1) /
                          (2 * n);
      const double dvb = (e * vb * int_pow(rho, 6 * n - 1) + a * vb2n * int_pow(rho, 2 * n) +
                          s * g * vb2n * int_pow(rho, 4 * n) - s * (2 * n - 1) * vb2n) /
                         (2 * n);
      return {drho, dvb};
    }
    const double ub = w;
    const double ub2n = int_pow(ub, 2 * n);
    const double drho = (e * ub2n * int_pow(rho, 6 * n) +
                         s * int_pow(rho, 2 * n + 1) * (a + g * ub * int_pow(rho, 2 * n))) /
                        (2 * n - 1);
    const double dub =
        s * (1.0 + a * ub * int_pow(rho, 2 * n) + g * ub * ub * int_pow(rho, 4 * n)) +
        e * ub2n * ub * int_pow(rho, 6 * n - 1) -
        2 * n * ub *
            (e * ub2n * int_pow(rho, 6 * n - 1) +
             s * int_pow(rho, 2 * n) * (a + g * ub * int_pow(rho, 2 * n))) /
            (2 * n - 1);
    return {drho, dub};
  }

  if (is_x_branch(b.direction)) {
    const double vb = w;
    const double vb2n = int_pow(vb, 2 * n);
    const double vb2n1 = vb2n * vb;
    const double drho = s *
                        (e * int_pow(rho, 4 * n + 3) + rho * vb2n +
                         s * a * int_pow(rho, n + 2) * vb2n +
                         g * int_pow(rho, 2 * n + 3) * vb2n) /
                        (n + 1);
    const double dvb = (s * e * vb * int_pow(rho, 4 * n + 2) + a * vb2n1 * int_pow(rho, n + 1) +
                        s * g * vb2n1 * int_pow(rho, 2 * n + 2) - s * n * vb2n1) /
                       (n + 1);
    return {drho, dvb};
  }
  const double ub = w;
  const double ub2n1 = int_pow(ub, 2 * n + 1);
  const double drho = (e * ub2n1 * int_pow(rho, 4 * n + 3) +
                       int_pow(rho, n + 2) * (a + g * ub * int_pow(rho, n + 1))) /
                      n;
  const double dub =
      e * ub2n1 * ub * int_pow(rho, 4 * n + 2) +
      (1.0 + a * ub * int_pow(rho, n + 1) + g * ub * ub * int_pow(rho, 2 * n + 2)) -
      (n + 1) * ub *
          (e * ub2n1 * int_pow(rho, 4 * n + 2) +
           int_pow(rho, n + 1) * (a + g * ub * int_pow(rho, n + 1))) /
          n;
  return {drho, dub};
}

double chart_to_blowup_consistency(const Parameters& p, const BlowupBranch& b,
                                   std::span<const Eigen::Vector2d> samples) {
  check_parity(p, b);
  const BlowupWeights wts = blowup_weights(b);
  const double s = branch_sign(b.direction);
  double worst = 0.0;
  for (const auto& sample : samples) {
    const double rho = sample.x();
    const double w = sample.y();
    if (!(rho > 0.0))
      throw InvalidParameters("blow-up consistency samples require rho > 0");

    double u, v;
    if (is_x_branch(b.direction)) {
      u = s * int_pow(rho, wts.u_power);
      v = w * int_pow(rho, wts.v_power);
    } else {
      u = w * int_pow(rho, wts.u_power);
      v = s * int_pow(rho, wts.v_power);
    }
    const Eigen::Vector2d f = chart_field(p, ChartId::U2, u, v);

    double drho, dw;
    if (is_x_branch(b.direction)) {
      drho = f.x() / (wts.u_power * s * int_pow(rho, wts.u_power - 1));
      dw = (f.y() - wts.v_power * w * int_pow(rho, wts.v_power - 1) * drho) /
           int_pow(rho, wts.v_power);
    } else {
      drho = f.y() / (wts.v_power * s * int_pow(rho, wts.v_power - 1));
      dw = (f.x() - wts.u_power * w * int_pow(rho, wts.u_power - 1) * drho) /
           int_pow(rho, wts.u_power);
    }
    const double rescale = std::pow(rho, -static_cast<double>(wts.time_power));
    const Eigen::Vector2d pushed(drho * rescale, dw * rescale);
    const Eigen::Vector2d direct = blowup_field(p, b, rho, w);
    for (int i = 0; i < 2; ++i) {
      const double err = std::fabs(pushed[i] - direct[i]) /
                         std::max(1.0, std::fabs(direct[i]));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace duffing
