#pragma once

#include "duffing/model.hpp"

#include <optional>
#include <span>
#include <vector>

namespace duffing {

/// Thrown by chart maps when the point lies outside the chart domain.
class OutOfChart : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Thrown when a blow-up branch does not match the degree parity.
class ParityMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Local charts of the compactified sphere. U1/V1 cover the x > 0 / x < 0
/// ends, U2/V2 the y > 0 / y < 0 ends, PlaneU3 is the finite plane itself.
enum class ChartId { U1, U2, V1, V2, PlaneU3 };
const char* to_string(ChartId c);

/// (u, v) chart coordinates of a finite-plane point: (y/x, 1/x) on U1/V1,
/// (x/y, 1/y) on U2/V2. The denominator coordinate must be nonzero and of
/// the chart's sign.
Eigen::Vector2d to_chart(const PlaneState& s, ChartId c);

/// Inverse of to_chart; v = 0 (the circle at infinity) has no plane preimage.
PlaneState from_chart(const Eigen::Vector2d& uv, ChartId c);

/// Compactified polynomial field in chart coordinates (degree n = m after
/// clearing denominators with v^n). V-chart expressions are the U-chart ones
/// times (-1)^(m-1).
Eigen::Vector2d chart_field(const Parameters& p, ChartId c, double u, double v);

struct SectorStructure {
  int hyperbolic = 0;
  int parabolic = 0;
  int elliptic = 0;
  bool operator==(const SectorStructure&) const = default;
};

enum class InfiniteKind { Saddle, StableNode, UnstableNode, SaddleNode, LinearlyZero, Nilpotent };
enum class NodeStability { Stable, Unstable };
const char* to_string(InfiniteKind k);

/// Rest point on the circle at infinity, at (u, 0) of its chart.
struct InfiniteEquilibrium {
  ChartId chart = ChartId::U1;
  double u = 0.0;
  InfiniteKind kind = InfiniteKind::Saddle;
  std::optional<SectorStructure> sectors;     ///< local sector decomposition, m > 1
  std::optional<NodeStability> stability;     ///< node stability of the even-degree point
};

/// Infinite rest points: for m = 1 up to two hyperbolic points (or one
/// saddle-node) in U1; for m > 1 the single degenerate point at the origin
/// of U2 with its sector decomposition attached when sigma != 0.
std::vector<InfiniteEquilibrium> infinite_equilibria(const Parameters& p);

/// Closed-form sector counts around the degenerate point at infinity.
/// Requires m > 1 and sigma != 0.
SectorStructure sector_structure_at_infinity(const Parameters& p);

enum class BlowupDirection { XPlus, XMinus, YPlus, YMinus };

/// Directional branch of the weighted blow-up at the U2 origin. The weights
/// are (2n, 2n-1) for m = 2n and (n+1, n) for m = 2n+1.
struct BlowupBranch {
  BlowupDirection direction = BlowupDirection::XPlus;
  int n = 1;
  bool even_m = false;

  static BlowupBranch for_degree(int m, BlowupDirection d);
  int degree() const { return even_m ? 2 * n : 2 * n + 1; }
};

struct BlowupWeights {
  int u_power;     ///< u = w * rho^u_power
  int v_power;     ///< v = w * rho^v_power
  int time_power;  ///< d(eta) = rho^time_power d(tau)
};
BlowupWeights blowup_weights(const BlowupBranch& b);

/// Divided directional field of the blow-up. For X branches the coordinates
/// are (rho, vbar), for Y branches (rho, ubar).
Eigen::Vector2d blowup_field(const Parameters& p, const BlowupBranch& b, double rho, double w);

/// Pushes the U2 chart field through the blow-up substitution, divides by the
/// time-rescale power of rho, and compares against blowup_field. Returns the
/// maximum relative discrepancy over the samples (each with rho > 0).
double chart_to_blowup_consistency(const Parameters& p, const BlowupBranch& b,
                                   std::span<const Eigen::Vector2d> samples);

}  // namespace duffing
