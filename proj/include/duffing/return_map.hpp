#pragma once

#include "duffing/equilibria.hpp"
#include "duffing/integrate.hpp"

#include <string>
#include <vector>

namespace duffing {

/// Thrown when a return-map start point coincides with a rest point.
class EquilibriumStart : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class ReturnOutcome { Closed, SpiralIn, SpiralOut, Escape };
const char* to_string(ReturnOutcome o);

/// First return to the section {y = 0, x > 0} with matching crossing
/// direction, started from (r, 0).
struct ReturnMapResult {
  ReturnOutcome outcome = ReturnOutcome::Escape;
  double period = 0.0;       ///< Closed: time of the returning crossing
  double next_radius = 0.0;  ///< SpiralIn/SpiralOut: x of the returning crossing
  PlaneState section_point{0.0, 0.0};
  bool encircles_origin = false;  ///< the loop reached x < 0 on the way round
};

struct ReturnMapOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double closure_tol = 1e-6;  ///< relative |P(r) - r| threshold for Closed
  double escape_radius = 1e6;
  double max_time = 2e3;
};

ReturnMapResult poincare_return(const Parameters& p, double r,
                                const ReturnMapOptions& opts = {});

struct RadiusEvidence {
  double radius = 0.0;
  ReturnOutcome outcome = ReturnOutcome::Escape;
  double next_radius = 0.0;
  double period = 0.0;
  bool encircles_origin = false;
  std::string note;
};

struct CenterTestResult {
  bool is_center = false;
  std::vector<RadiusEvidence> evidence;
};

/// True iff every radius returns Closed with the loop encircling the origin.
/// Pre: radii positive and inside the innermost connection level when one
/// exists (center_test_radii produces such a set).
CenterTestResult numeric_center_test(const Parameters& p, const std::vector<double>& radii,
                                     const ReturnMapOptions& opts = {});

/// Clamps base radii strictly inside the origin-side period annulus when a
/// connection cycle bounds it; also steers radii off rest points.
std::vector<double> center_test_radii(const Parameters& p, std::vector<double> base);

struct GlobalCenterTestResult {
  bool is_global_center = false;
  bool unique_equilibrium = false;
  bool infinity_sectors_ok = false;  ///< m > 1: both sectors hyperbolic
  CenterTestResult center;
};

/// Combined numeric verdict: unique finite rest point, closed returns at
/// radii {0.1, 1, 5, 20, 100}, and (m > 1) the two-hyperbolic-sector
/// structure at infinity.
GlobalCenterTestResult numeric_global_center_test(const Parameters& p,
                                                  const ReturnMapOptions& opts = {});

enum class CycleKind { NoCycle, Homoclinic, Heteroclinic, DoubleHomoclinic };
const char* to_string(CycleKind k);

struct CycleReport {
  CycleKind kind = CycleKind::NoCycle;
  std::vector<PlaneState> saddles;
  double level = 0.0;  ///< potential energy at the connection
};

/// Connection-cycle taxonomy for the conservative case from the critical
/// points of the potential. Requires alpha = 0.
CycleReport detect_connection_cycles(const Parameters& p);

struct LimitCycleCheck {
  double divergence_value = 0.0;
  bool divergence_nonzero = false;  ///< analytic leg
  bool no_closed_orbit = false;     ///< numeric leg
  std::vector<RadiusEvidence> evidence;
  bool passed() const { return divergence_nonzero && no_closed_orbit; }
};

/// Requires alpha != 0: checks the constant-divergence hypothesis and that
/// no sampled radius yields a closed return.
LimitCycleCheck limit_cycle_absence_check(const Parameters& p, const std::vector<double>& radii,
                                          const ReturnMapOptions& opts = {});

}  // namespace duffing
