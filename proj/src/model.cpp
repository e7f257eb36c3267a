#include "duffing/model.hpp"

#include <cmath>
#include <string>

namespace duffing {

double int_pow(double base, int exponent) {
  double result = 1.0;
  double b = base;
  int n = exponent;
  while (n > 0) {
    if (n & 1) result *= b;
    b *= b;
    n >>= 1;
  }
  return result;
}

Parameters::Parameters(double alpha_, double epsilon_, double sigma_, int m_)
    : alpha(alpha_), epsilon(epsilon_), sigma(sigma_), m(m_) {
  if (!(std::isfinite(alpha) && std::isfinite(epsilon) && std::isfinite(sigma)))
    throw InvalidParameters("parameters must be finite");
  if (epsilon == 0.0)
    throw InvalidParameters("epsilon must be nonzero");
  if (m < 1)
    throw InvalidParameters("degree m must be >= 1, got " + std::to_string(m));
}

double degeneracy_scale(const Parameters& p) {
  return std::max({1.0, p.alpha * p.alpha, std::fabs(p.epsilon + p.sigma)});
}

bool near_zero(const Parameters& p, double x) {
  return std::fabs(x) <= kDegeneracyTol * degeneracy_scale(p);
}

DegeneracyFlags degeneracy(const Parameters& p) {
  DegeneracyFlags f;
  f.sigma_zero = near_zero(p, p.sigma);
  if (p.m == 1) {
    f.discriminant_zero = near_zero(p, p.alpha * p.alpha - 4.0 * (p.epsilon + p.sigma));
    f.on_table_boundary = near_zero(p, p.epsilon + p.sigma);
  } else {
    const bool pair_exists = p.m % 2 == 0 || p.sigma * p.epsilon < 0.0;
    f.discriminant_zero = near_zero(p, p.alpha * p.alpha - 4.0 * p.sigma) ||
                          (pair_exists &&
                           near_zero(p, p.alpha * p.alpha + 4.0 * p.sigma * (p.m - 1)));
    f.on_table_boundary = f.sigma_zero || near_zero(p, p.alpha);
  }
  return f;
}

PlaneState eval_field(const Parameters& p, const PlaneState& s) {
  const double x = s.x();
  const double y = s.y();
  return {y, -p.alpha * y - p.epsilon * int_pow(x, p.m) - p.sigma * x};
}

Eigen::Matrix2d field_jacobian(const Parameters& p, const PlaneState& s) {
  Eigen::Matrix2d j;
  j << 0.0, 1.0,
      -p.epsilon * p.m * int_pow(s.x(), p.m - 1) - p.sigma, -p.alpha;
  return j;
}

double divergence(const Parameters& p) { return -p.alpha; }

double potential_energy(const Parameters& p, double x) {
  return p.epsilon / (p.m + 1) * int_pow(x, p.m + 1) + 0.5 * p.sigma * x * x;
}

double potential_slope(const Parameters& p, double x) {
  return p.epsilon * int_pow(x, p.m) + p.sigma * x;
}

double potential_curvature(const Parameters& p, double x) {
  return p.epsilon * p.m * int_pow(x, p.m - 1) + p.sigma;
}

double total_energy(const Parameters& p, const PlaneState& s) {
  return 0.5 * s.y() * s.y() + potential_energy(p, s.x());
}

double dissipation_rate(const Parameters& p, const PlaneState& s) {
  return -p.alpha * s.y() * s.y();
}

double canonical_first_integral(const Parameters& p, double u, double v) {
  if (!(p.sigma > 0.0))
    throw InvalidParameters("canonical first integral requires sigma > 0");
  return u * u + v * v +
         2.0 * p.epsilon / (p.sigma * (p.m + 1)) * int_pow(u, p.m + 1);
}

}  // namespace duffing
