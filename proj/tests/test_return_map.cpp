#include "duffing/return_map.hpp"

#include "duffing/infinity.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace duffing;

TEST_CASE("first return outcomes at pinned parameters") {
  SUBCASE("global center closes at every radius") {
    const ReturnMapResult res = poincare_return(Parameters(0, 1, 1, 3), 1.0);
    CHECK(res.outcome == ReturnOutcome::Closed);
    CHECK(res.encircles_origin);
    CHECK(res.period > 0.0);
    CHECK(std::fabs(res.section_point.x() - 1.0) < 1e-6);
  }
  SUBCASE("damping turns the loop into an inward spiral") {
    const ReturnMapResult res = poincare_return(Parameters(0.5, 1, 1, 3), 1.0);
    CHECK(res.outcome == ReturnOutcome::SpiralIn);
    CHECK(res.next_radius < 1.0);
  }
  SUBCASE("outside the separatrix level the orbit escapes") {
    const ReturnMapResult res = poincare_return(Parameters(0, -1, 1, 3), 2.0);
    CHECK(res.outcome == ReturnOutcome::Escape);
  }
  SUBCASE("negative damping spirals outward") {
    const ReturnMapResult res = poincare_return(Parameters(-0.2, 1, 1, 3), 1.0);
    CHECK(res.outcome == ReturnOutcome::SpiralOut);
    CHECK(res.next_radius > 1.0);
  }
  SUBCASE("starting on a rest point is rejected") {
    CHECK_THROWS_AS(poincare_return(Parameters(0, -1, 1, 3), 1.0), EquilibriumStart);
    CHECK_THROWS_AS(poincare_return(Parameters(0, 1, 1, 3), 0.0), InvalidParameters);
    CHECK_THROWS_AS(poincare_return(Parameters(0, 1, 1, 3), -1.0), InvalidParameters);
  }
  SUBCASE("a damped node sinks without returning and reads as spiral-in") {
    const ReturnMapResult res = poincare_return(Parameters(3, 1, 1, 3), 1.0);
    CHECK(res.outcome == ReturnOutcome::SpiralIn);
    CHECK(res.next_radius < 0.1);
  }
}

TEST_CASE("closed loops inside a figure-eight lobe do not encircle the origin") {
  // Double-homoclinic case: orbits through small (r, 0) are closed around
  // E+ = (1, 0), not around the saddle at the origin.
  const ReturnMapResult res = poincare_return(Parameters(0, 1, -1, 3), 0.1);
  CHECK(res.outcome == ReturnOutcome::Closed);
  CHECK_FALSE(res.encircles_origin);
}

TEST_CASE("closed-orbit period matches the quadrature oracle") {
  // Independent route: T = 4 * int_0^{pi/2} A cos(t) / sqrt(2(U(A) - U(A sin t))) dt
  // for the conservative orbit through (A, 0), evaluated by Simpson's rule.
  const Parameters p(0, 1, 1, 3);
  const double amplitude = 1.0;
  const double level = potential_energy(p, amplitude);
  auto integrand = [&](double theta) {
    const double x = amplitude * std::sin(theta);
    const double gap = 2.0 * (level - potential_energy(p, x));
    // Removable endpoint: the limit at theta = pi/2 is sqrt(A / U'(A)).
    if (gap <= 0.0) return std::sqrt(amplitude / potential_slope(p, amplitude));
    return amplitude * std::cos(theta) / std::sqrt(gap);
  };
  const int n = 20000;  // even
  const double h = (std::numbers::pi / 2) / n;
  double sum = integrand(0.0) + integrand(std::numbers::pi / 2);
  for (int i = 1; i < n; ++i) sum += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
  const double period_quadrature = 4.0 * sum * h / 3.0;

  const ReturnMapResult res = poincare_return(p, amplitude);
  REQUIRE(res.outcome == ReturnOutcome::Closed);
  CHECK(res.period == doctest::Approx(period_quadrature).epsilon(1e-7));
}

TEST_CASE("conservative periods split evenly across the axis") {
  // x-axis symmetry: the crossing of {y = 0, x < 0} happens at half period.
  const Parameters p(0, 1, 1, 3);
  SectionEventSpec any_crossing;
  any_crossing.value = [](double, const PlaneState& s) { return s.y(); };
  any_crossing.direction = 0;
  any_crossing.target_count = 2;
  IntegrationOptions opts;
  opts.max_time = 100.0;
  const Trajectory traj = integrate_with_events(p, PlaneState(1.0, 0.0), opts, any_crossing);
  REQUIRE(traj.termination == Termination::SectionEvent);
  REQUIRE(traj.events.size() == 2);
  const double half = traj.events[0].t;
  const double full = traj.events[1].t;
  CHECK(traj.events[0].state.x() < 0.0);
  CHECK(std::fabs(2 * half - full) < 1e-6);
}

TEST_CASE("numeric center test") {
  SUBCASE("global center parameters pass a wide radius spread") {
    const CenterTestResult res =
        numeric_center_test(Parameters(0, 1, 1, 3), {0.1, 1.0, 5.0});
    CHECK(res.is_center);
    CHECK(res.evidence.size() == 3);
  }
  SUBCASE("linear center passes") {
    CHECK(numeric_center_test(Parameters(0, 1, 1, 1), {0.5, 2.0}).is_center);
  }
  SUBCASE("any damping fails the test") {
    CHECK_FALSE(numeric_center_test(Parameters(0.1, 1, 1, 3), {1.0}).is_center);
  }
  SUBCASE("lobe orbits around a nonzero center fail the origin test") {
    CHECK_FALSE(numeric_center_test(Parameters(0, 1, -1, 3), {0.1, 0.45}).is_center);
  }
}

TEST_CASE("center-test radii respect the connection level") {
  // Heteroclinic loop at x = 1: all probing radii must stay inside.
  const auto radii = center_test_radii(Parameters(0, -1, 1, 3), {0.1, 1.0, 5.0});
  REQUIRE(radii.size() == 3);
  for (double r : radii) CHECK(r < 1.0);
  CHECK(numeric_center_test(Parameters(0, -1, 1, 3), radii).is_center);

  // Even degree with the saddle at negative x: bound comes from the level
  // crossing on the positive axis.
  const auto radii2 = center_test_radii(Parameters(0, 1, 1, 2), {0.1, 1.0, 5.0});
  for (double r : radii2) CHECK(potential_energy(Parameters(0, 1, 1, 2), r) <
                                potential_energy(Parameters(0, 1, 1, 2), -1.0));
  CHECK(numeric_center_test(Parameters(0, 1, 1, 2), radii2).is_center);
}

TEST_CASE("numeric global-center test") {
  SUBCASE("odd-degree conservative case with positive stiffness") {
    const GlobalCenterTestResult res = numeric_global_center_test(Parameters(0, 1, 1, 3));
    CHECK(res.is_global_center);
    CHECK(res.unique_equilibrium);
    CHECK(res.infinity_sectors_ok);
    CHECK(res.center.evidence.size() == 5);
  }
  SUBCASE("even degree fails at infinity") {
    const GlobalCenterTestResult res = numeric_global_center_test(Parameters(0, 1, 1, 2));
    CHECK_FALSE(res.is_global_center);
    CHECK_FALSE(res.infinity_sectors_ok);
  }
  SUBCASE("heteroclinic case fails uniqueness") {
    const GlobalCenterTestResult res = numeric_global_center_test(Parameters(0, -1, 1, 3));
    CHECK_FALSE(res.is_global_center);
    CHECK_FALSE(res.unique_equilibrium);
  }
}

TEST_CASE("connection-cycle taxonomy") {
  SUBCASE("heteroclinic loop between the two saddles") {
    const CycleReport rep = detect_connection_cycles(Parameters(0, -1, 1, 3));
    CHECK(rep.kind == CycleKind::Heteroclinic);
    REQUIRE(rep.saddles.size() == 2);
    CHECK(rep.saddles[0].x() == doctest::Approx(-1.0));
    CHECK(rep.saddles[1].x() == doctest::Approx(1.0));
    CHECK(rep.level == doctest::Approx(0.25));
  }
  SUBCASE("even degree homoclinic loop") {
    const CycleReport rep = detect_connection_cycles(Parameters(0, 1, -1, 2));
    CHECK(rep.kind == CycleKind::Homoclinic);
    REQUIRE(rep.saddles.size() == 1);
    CHECK(rep.saddles[0].x() == 0.0);
    CHECK(rep.level == 0.0);
  }
  SUBCASE("even degree with positive signs pins the saddle at negative x") {
    const CycleReport rep = detect_connection_cycles(Parameters(0, 1, 1, 2));
    CHECK(rep.kind == CycleKind::Homoclinic);
    REQUIRE(rep.saddles.size() == 1);
    CHECK(rep.saddles[0].x() == doctest::Approx(-1.0));
    CHECK(rep.level == doctest::Approx(potential_energy(Parameters(0, 1, 1, 2), -1.0)));
  }
  SUBCASE("figure-eight around the origin saddle") {
    const CycleReport rep = detect_connection_cycles(Parameters(0, 1, -1, 3));
    CHECK(rep.kind == CycleKind::DoubleHomoclinic);
    CHECK(rep.level == 0.0);
  }
  SUBCASE("no cycles without a saddle or off the conservative slice") {
    CHECK(detect_connection_cycles(Parameters(0, 1, 1, 3)).kind == CycleKind::NoCycle);
    CHECK(detect_connection_cycles(Parameters(0, 1, 1, 1)).kind == CycleKind::NoCycle);
    CHECK_THROWS_AS(detect_connection_cycles(Parameters(0.5, 1, -1, 3)), InvalidParameters);
  }
  SUBCASE("levels equal the potential at each saddle and bound the annulus") {
    const Parameters p(0, -1, 1, 3);
    const CycleReport rep = detect_connection_cycles(p);
    for (const PlaneState& s : rep.saddles)
      CHECK(total_energy(p, s) == doctest::Approx(rep.level).epsilon(1e-10));
    // An orbit started just inside the level set stays bounded for T = 50.
    IntegrationOptions opts;
    opts.max_time = 50.0;
    const Trajectory traj = integrate(p, PlaneState(1.0 - 1e-4, 0.0), opts);
    CHECK(traj.termination == Termination::TimeExhausted);
    for (const Sample& s : traj.samples) CHECK(s.state.norm() < 1.5);
  }
}

TEST_CASE("no closed returns with damping on") {
  SUBCASE("pinned examples") {
    const LimitCycleCheck a =
        limit_cycle_absence_check(Parameters(0.3, 1, 1, 3), {0.5, 1.0, 2.0, 4.0});
    CHECK(a.passed());
    CHECK(a.divergence_value == -0.3);
    const LimitCycleCheck b = limit_cycle_absence_check(Parameters(-1, 1, 1, 2), {0.5, 1.0});
    CHECK(b.passed());
    CHECK_THROWS_AS(limit_cycle_absence_check(Parameters(0, 1, 1, 3), {1.0}),
                    InvalidParameters);
  }
  SUBCASE("iterated returns shrink monotonically for positive damping") {
    const Parameters p(0.4, 1, 1, 3);
    double r = 2.0;
    for (int i = 0; i < 5; ++i) {
      const ReturnMapResult res = poincare_return(p, r);
      REQUIRE(res.outcome == ReturnOutcome::SpiralIn);
      CHECK(res.next_radius < r);
      r = res.next_radius;
      if (r < 0.05) break;
    }
  }
}

TEST_CASE("oracle agrees with the closed-form verdicts on the coarse grid") {
  for (int m = 1; m <= 5; ++m) {
    for (double a : {-1.0, 0.0, 1.0}) {
      for (double s : {-1.0, 1.0}) {
        for (double e : {-1.0, 1.0}) {
          const Parameters p(a, e, s, m);
          if (m == 1 && near_zero(p, e + s)) continue;  // degenerate line case
          const bool predicted = center_at_origin(p).is_local_center;
          const CenterTestResult numeric =
              numeric_center_test(p, center_test_radii(p, {0.1, 0.4}));
          CHECK_MESSAGE(numeric.is_center == predicted,
                        "m=", m, " alpha=", a, " sigma=", s, " epsilon=", e);

          const bool global_predicted = center_at_origin(p).is_global_center;
          const GlobalCenterTestResult global = numeric_global_center_test(p);
          CHECK_MESSAGE(global.is_global_center == global_predicted,
                        "global m=", m, " alpha=", a, " sigma=", s, " epsilon=", e);
        }
      }
    }
  }
}
