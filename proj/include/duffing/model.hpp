#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>

namespace duffing {

/// Planar state (x = position, y = velocity).
using PlaneState = Eigen::Vector2d;
using Complex = std::complex<double>;

/// Thrown when arguments violate a documented precondition (epsilon = 0,
/// m < 1, sigma <= 0 for the canonical first integral, alpha constraints of
/// the conservative-only operations, ...).
class InvalidParameters : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Integer power by repeated squaring. Unlike std::pow this keeps the sign
/// of a negative base exact for odd exponents and never routes through
/// exp/log.
double int_pow(double base, int exponent);

/// Parameter quadruple of the oscillator
///     x' = y,   y' = -alpha*y - epsilon*x^m - sigma*x.
struct Parameters {
  double alpha;    ///< damping coefficient
  double epsilon;  ///< nonlinear stiffness, nonzero
  double sigma;    ///< linear stiffness
  int m;           ///< degree of the nonlinear term, >= 1

  Parameters(double alpha, double epsilon, double sigma, int m);

  bool odd_degree() const { return m % 2 != 0; }

  /// Stiffness seen by the linearization at the origin: epsilon + sigma for
  /// m = 1 (the x^m term is linear there), sigma otherwise.
  double origin_stiffness() const { return m == 1 ? epsilon + sigma : sigma; }
};

/// Relative tolerance for the equality boundaries below.
inline constexpr double kDegeneracyTol = 1e-12;

/// Scale against which boundary equalities are resolved.
double degeneracy_scale(const Parameters& p);

/// True iff |x| <= kDegeneracyTol * degeneracy_scale(p).
bool near_zero(const Parameters& p, double x);

/// Marks parameter points sitting on the equality boundaries that the
/// strict-inequality classification regions exclude.
struct DegeneracyFlags {
  bool sigma_zero = false;         ///< sigma = 0 (meaningful for m > 1)
  bool discriminant_zero = false;  ///< an eigenvalue discriminant vanishes
  /// The point is not strictly inside any classification-table region:
  /// for m = 1 this is epsilon + sigma = 0, for m > 1 sigma = 0 or alpha = 0.
  bool on_table_boundary = false;

  bool any() const { return sigma_zero || discriminant_zero || on_table_boundary; }
};

DegeneracyFlags degeneracy(const Parameters& p);

/// Right-hand side (y, -alpha*y - epsilon*x^m - sigma*x).
PlaneState eval_field(const Parameters& p, const PlaneState& s);

/// Exact Jacobian of eval_field at s.
Eigen::Matrix2d field_jacobian(const Parameters& p, const PlaneState& s);

/// Divergence of the field; constant, equal to -alpha.
double divergence(const Parameters& p);

/// U(x) = epsilon/(m+1) * x^(m+1) + sigma/2 * x^2.
double potential_energy(const Parameters& p, double x);

/// U'(x) = epsilon*x^m + sigma*x.
double potential_slope(const Parameters& p, double x);

/// U''(x) = m*epsilon*x^(m-1) + sigma.
double potential_curvature(const Parameters& p, double x);

/// H(x, y) = y^2/2 + U(x).
double total_energy(const Parameters& p, const PlaneState& s);

/// dH/dt along the flow; equals -alpha*y^2.
double dissipation_rate(const Parameters& p, const PlaneState& s);

/// First integral of the rescaled conservative system,
/// u^2 + v^2 + 2*epsilon/(sigma*(m+1)) * u^(m+1). Requires sigma > 0.
double canonical_first_integral(const Parameters& p, double u, double v);

}  // namespace duffing
