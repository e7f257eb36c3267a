#include "duffing/model.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>

using namespace duffing;

namespace {

// Deterministic uniform draws for the property checks.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  double uniform(double lo, double hi) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return lo + (hi - lo) * ((z >> 11) * 0x1.0p-53);
  }
  int degree() { return 1 + static_cast<int>(uniform(0.0, 6.0)); }
};

Parameters random_params(Rng& rng, bool conservative = false) {
  double eps = rng.uniform(-2.0, 2.0);
  if (std::fabs(eps) < 0.1) eps = 0.5;
  const double alpha = conservative ? 0.0 : rng.uniform(-2.0, 2.0);
  return Parameters(alpha, eps, rng.uniform(-2.0, 2.0), rng.degree());
}

// Independent expression path for the field, written without int_pow.
PlaneState field_reference(const Parameters& p, const PlaneState& s) {
  double xm = 1.0;
  for (int i = 0; i < p.m; ++i) xm *= s.x();
  return {s.y(), -p.alpha * s.y() - p.epsilon * xm - p.sigma * s.x()};
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Parameters(0.0, 0.0, 1.0, 3), InvalidParameters);
  CHECK_THROWS_AS(Parameters(0.0, 1.0, 1.0, 0), InvalidParameters);
  CHECK_THROWS_AS(Parameters(0.0, 1.0, 1.0, -2), InvalidParameters);
  CHECK_THROWS_AS(Parameters(std::nan(""), 1.0, 1.0, 2), InvalidParameters);
  CHECK_NOTHROW(Parameters(0.0, -1.0, 0.0, 1));
}

TEST_CASE("integer powers keep sign for negative bases") {
  CHECK(int_pow(-2.0, 3) == -8.0);
  CHECK(int_pow(-2.0, 4) == 16.0);
  CHECK(int_pow(5.0, 0) == 1.0);
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-3.0, 3.0);
    const int n = rng.degree();
    CHECK(int_pow(x, n) == doctest::Approx(std::pow(x, n)).epsilon(1e-13));
  }
}

TEST_CASE("field values at pinned points") {
  CHECK(eval_field(Parameters(0, 1, 1, 3), {0.0, 0.0}).norm() == 0.0);
  CHECK(eval_field(Parameters(0, -1, 1, 3), {1.0, 0.0}).norm() == 0.0);
  const PlaneState f = eval_field(Parameters(2, 1, 0, 2), {1.0, 1.0});
  CHECK(f.x() == 1.0);
  CHECK(f.y() == -3.0);
}

TEST_CASE("field matches an independently written expression") {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const Parameters p = random_params(rng);
    const PlaneState s(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
    const PlaneState a = eval_field(p, s);
    const PlaneState b = field_reference(p, s);
    CHECK(a.x() == b.x());
    CHECK(a.y() == doctest::Approx(b.y()).epsilon(1e-13));
  }
}

TEST_CASE("divergence is -alpha and matches differentiated partials") {
  CHECK(divergence(Parameters(0, 1, 1, 3)) == 0.0);
  CHECK(divergence(Parameters(0.5, 1, 1, 3)) == -0.5);
  CHECK(divergence(Parameters(-2, 1, 1, 2)) == 2.0);

  Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    const Parameters p = random_params(rng);
    const PlaneState s(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const double h = 1e-5 * std::max(1.0, s.norm());
    const double dfx = (eval_field(p, {s.x() + h, s.y()}).x() -
                        eval_field(p, {s.x() - h, s.y()}).x()) /
                       (2 * h);
    const double dfy = (eval_field(p, {s.x(), s.y() + h}).y() -
                        eval_field(p, {s.x(), s.y() - h}).y()) /
                       (2 * h);
    CHECK(dfx + dfy ==
          doctest::Approx(divergence(p)).epsilon(1e-6).scale(std::max(1.0, std::fabs(p.alpha))));
  }
}

TEST_CASE("potential and total energy at pinned points") {
  CHECK(potential_energy(Parameters(0.3, 2, -1, 4), 0.0) == 0.0);
  CHECK(potential_energy(Parameters(0, -1, 1, 3), 1.0) == doctest::Approx(0.25));
  CHECK(potential_energy(Parameters(0, 1, -1, 2), 1.0) == doctest::Approx(-1.0 / 6.0));

  const Parameters p(0, 1, 1, 3);
  CHECK(total_energy(p, {0.0, 0.0}) == 0.0);
  CHECK(total_energy(p, {1.0, 0.0}) == doctest::Approx(0.75));
  CHECK(total_energy(p, {0.0, 2.0}) == doctest::Approx(2.0));
}

TEST_CASE("dissipation rate equals the energy derivative along the field") {
  CHECK(dissipation_rate(Parameters(0, 1, 1, 3), {3.0, -2.0}) == 0.0);
  CHECK(dissipation_rate(Parameters(1, 1, 1, 2), {5.0, 2.0}) == doctest::Approx(-4.0));
  CHECK(dissipation_rate(Parameters(-1, 1, 1, 2), {0.0, 3.0}) == doctest::Approx(9.0));

  Rng rng(53);
  for (int i = 0; i < 300; ++i) {
    const Parameters p = random_params(rng);
    const PlaneState s(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const PlaneState f = eval_field(p, s);
    const double dH = potential_slope(p, s.x()) * f.x() + s.y() * f.y();
    const double expected = dissipation_rate(p, s);
    CHECK(dH == doctest::Approx(expected).epsilon(1e-9).scale(std::max(1.0, std::fabs(expected))));
  }
}

TEST_CASE("conservative energy is a first integral of the field") {
  Rng rng(59);
  for (int i = 0; i < 300; ++i) {
    const Parameters p = random_params(rng, /*conservative=*/true);
    const PlaneState s(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const PlaneState f = eval_field(p, s);
    const double dH = potential_slope(p, s.x()) * f.x() + s.y() * f.y();
    CHECK(std::fabs(dH) < 1e-9 * std::max(1.0, f.norm() * s.norm()));
  }
}

TEST_CASE("canonical first integral") {
  CHECK(canonical_first_integral(Parameters(0, 1, 1, 3), 0.0, 0.0) == 0.0);
  CHECK(canonical_first_integral(Parameters(0, 1, 1, 3), 1.0, 0.0) == doctest::Approx(1.5));
  CHECK(canonical_first_integral(Parameters(0, 2, 1, 3), 1.0, 1.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(canonical_first_integral(Parameters(0, 1, -1, 3), 1.0, 0.0),
                  InvalidParameters);
  CHECK_THROWS_AS(canonical_first_integral(Parameters(0, 1, 0, 3), 1.0, 0.0),
                  InvalidParameters);
}

TEST_CASE("field reversibility under the axis reflections") {
  Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    Parameters p = random_params(rng, /*conservative=*/true);
    const PlaneState s(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const PlaneState f = eval_field(p, s);

    const PlaneState fx = eval_field(p, {s.x(), -s.y()});
    CHECK(fx.x() == -f.x());
    CHECK(fx.y() == f.y());

    if (p.m % 2 == 1) {
      const PlaneState fy = eval_field(p, {-s.x(), s.y()});
      CHECK(fy.x() == f.x());
      CHECK(fy.y() == -f.y());
    }
  }
}

TEST_CASE("degeneracy flags fire exactly on the equality boundaries") {
  CHECK(degeneracy(Parameters(1, 1, 0, 3)).sigma_zero);
  CHECK_FALSE(degeneracy(Parameters(1, 1, 1e-6, 3)).sigma_zero);

  CHECK(degeneracy(Parameters(2, 0.5, 0.5, 1)).discriminant_zero);  // alpha^2 = 4(eps+sigma)
  CHECK_FALSE(degeneracy(Parameters(2, 0.5, 0.6, 1)).discriminant_zero);
  CHECK(degeneracy(Parameters(2, 1, 1, 3)).discriminant_zero);   // alpha^2 = 4 sigma
  CHECK(degeneracy(Parameters(1, -1, 1, 1)).on_table_boundary);  // eps + sigma = 0
  CHECK(degeneracy(Parameters(0, 1, 1, 3)).on_table_boundary);   // alpha = 0, m > 1
  CHECK_FALSE(degeneracy(Parameters(0.5, 1, 1, 3)).any());
}

TEST_CASE("jacobian matches finite differences of the field") {
  Rng rng(83);
  for (int i = 0; i < 100; ++i) {
    const Parameters p = random_params(rng);
    const PlaneState s(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const Eigen::Matrix2d j = field_jacobian(p, s);
    const double h = 1e-6 * std::max(1.0, s.norm());
    for (int col = 0; col < 2; ++col) {
      PlaneState hi = s, lo = s;
      hi[col] += h;
      lo[col] -= h;
      const PlaneState fd = (eval_field(p, hi) - eval_field(p, lo)) / (2 * h);
      CHECK(fd.x() == doctest::Approx(j(0, col)).epsilon(1e-5).scale(1.0));
      CHECK(fd.y() == doctest::Approx(j(1, col)).epsilon(1e-5).scale(
                          std::max(1.0, std::fabs(j(1, col)))));
    }
  }
}
