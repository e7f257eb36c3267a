#include "duffing/checks.hpp"

#include "duffing/equilibria.hpp"
#include "duffing/infinity.hpp"
#include "duffing/integrate.hpp"
#include "duffing/model.hpp"
#include "duffing/portrait.hpp"
#include "duffing/return_map.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace duffing::checks {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Deterministic uniform draws independent of the standard library's
// distribution implementations.
struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int pick(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
  double sign() { return next() & 1 ? 1.0 : -1.0; }
};

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t next = 0;
  std::mutex mtx;
  const int n = std::min<int>(workers, static_cast<int>(count));
  for (int w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mtx);
          if (next >= count) return;
          i = next++;
        }
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

const std::vector<double> kSignGrid{-1.0, -0.5, 0.5, 1.0};

CoarseKind expected_origin_cell(double sigma, double alpha) {
  if (sigma > 0.0) return alpha > 0.0 ? CoarseKind::Stable : CoarseKind::Unstable;
  return CoarseKind::Saddle;
}

CoarseKind expected_pair_cell(double sigma, double alpha) {
  if (sigma > 0.0) return CoarseKind::Saddle;
  return alpha > 0.0 ? CoarseKind::Stable : CoarseKind::Unstable;
}

CriterionResult table_reproduction(int workers) {
  CriterionResult res;
  res.id = 1;
  res.name = "table reproduction (finite equilibria grid)";
  const auto t0 = Clock::now();
  struct Point {
    Parameters p;
    std::string mismatch;
  };
  std::vector<Point> points;
  for (int m : {2, 3, 4, 5})
    for (double s : kSignGrid)
      for (double e : kSignGrid)
        for (double a : kSignGrid) points.push_back({Parameters(a, e, s, m), {}});

  parallel_for(points.size(), workers, [&](std::size_t i) {
    const Parameters& p = points[i].p;
    std::ostringstream bad;
    for (const Equilibrium& eq : finite_equilibria(p)) {
      const bool pair_applicable = p.sigma * p.epsilon < 0.0;
      CoarseKind expected;
      if (eq.label == EquilibriumLabel::Origin)
        expected = expected_origin_cell(p.sigma, p.alpha);
      else if (pair_applicable)
        expected = expected_pair_cell(p.sigma, p.alpha);
      else
        continue;  // cell not present in the table
      if (coarse(eq.kind) != expected)
        bad << "(" << p.alpha << "," << p.epsilon << "," << p.sigma << ",m=" << p.m << ") "
            << to_string(eq.label) << ": got " << to_string(coarse(eq.kind)) << " want "
            << to_string(expected) << "; ";
    }
    points[i].mismatch = bad.str();
  });

  int checked = 0;
  std::string failures;
  for (const Point& pt : points) {
    ++checked;
    failures += pt.mismatch;
  }
  res.seconds = seconds_since(t0);
  res.passed = failures.empty() && res.seconds < 5.0;
  std::ostringstream d;
  d << checked << " grid points, " << (failures.empty() ? "all cells match" : failures);
  if (res.seconds >= 5.0) d << " [over 5 s budget]";
  res.detail = d.str();
  return res;
}

CriterionResult global_center_returns(int workers) {
  CriterionResult res;
  res.id = 2;
  res.name = "global-center return maps";
  const auto t0 = Clock::now();
  struct Case {
    int m;
    double r;
    double defect = -1.0;
    bool ok = false;
  };
  std::vector<Case> cases;
  for (int m : {3, 5})
    for (double r : {0.1, 1.0, 5.0, 20.0}) cases.push_back({m, r});

  parallel_for(cases.size(), workers, [&](std::size_t i) {
    const Parameters p(0.0, 1.0, 1.0, cases[i].m);
    const ReturnMapResult ret = poincare_return(p, cases[i].r);
    cases[i].defect = std::fabs(ret.section_point.x() - cases[i].r) /
                      std::max(1.0, cases[i].r);
    cases[i].ok = ret.outcome == ReturnOutcome::Closed && cases[i].defect < 1e-6 &&
                  ret.encircles_origin;
  });

  res.seconds = seconds_since(t0);
  res.passed = res.seconds < 30.0;
  std::ostringstream d;
  d.precision(3);
  for (const Case& c : cases) {
    res.passed = res.passed && c.ok;
    d << "m=" << c.m << " r=" << c.r << " |P(r)-r|/max(1,r)=" << std::scientific << c.defect
      << (c.ok ? " ok; " : " FAIL; ");
  }
  if (res.seconds >= 30.0) d << "[over 30 s budget]";
  res.detail = d.str();
  return res;
}

CriterionResult even_degree_escape(int) {
  CriterionResult res;
  res.id = 3;
  res.name = "even degree escape to infinity";
  const auto t0 = Clock::now();
  std::ostringstream d;
  res.passed = true;
  for (int m : {2, 4}) {
    const Parameters p(0.0, 1.0, 1.0, m);
    IntegrationOptions opts;
    opts.escape_radius = 1e6;
    opts.max_time = 1e4;
    const Trajectory traj = integrate(p, PlaneState(-10.0, 0.0), opts);
    const bool ok = traj.termination == Termination::Escaped;
    res.passed = res.passed && ok;
    d << "m=" << m << (ok ? " escaped at t=" : " FAILED, no escape by t=")
      << (ok ? traj.escape_time : traj.samples.back().t) << "; ";
  }
  res.seconds = seconds_since(t0);
  res.detail = d.str();
  return res;
}

CriterionResult no_limit_cycles(int workers) {
  CriterionResult res;
  res.id = 4;
  res.name = "limit-cycle absence on random draws";
  const auto t0 = Clock::now();
  struct Draw {
    Parameters p;
    bool ok = false;
    std::string note;
  };
  std::vector<Draw> draws;
  SplitMix rng(0x5eedu);
  while (draws.size() < 20) {
    const double alpha = rng.sign() * rng.uniform(0.1, 2.0);
    const double eps = rng.sign() * rng.uniform(0.1, 2.0);
    const double sig = rng.sign() * rng.uniform(0.1, 2.0);
    const int m = rng.pick(1, 5);
    if (m == 1 && std::fabs(eps + sig) < 0.05) continue;  // keep away from the line case
    draws.push_back({Parameters(alpha, eps, sig, m), false, {}});
  }
  const std::vector<double> radii{0.25, 0.5, 1.0, 2.0, 4.0, 8.0};

  parallel_for(draws.size(), workers, [&](std::size_t i) {
    const Parameters& p = draws[i].p;
    const LimitCycleCheck check = limit_cycle_absence_check(p, radii);
    draws[i].ok = check.passed() && check.divergence_value == -p.alpha;
    if (!draws[i].ok) {
      std::ostringstream msg;
      msg << "(" << p.alpha << "," << p.epsilon << "," << p.sigma << ",m=" << p.m << ")";
      draws[i].note = msg.str();
    }
  });

  res.passed = true;
  std::string failures;
  for (const Draw& d : draws) {
    res.passed = res.passed && d.ok;
    failures += d.note;
  }
  res.seconds = seconds_since(t0);
  res.detail = failures.empty()
                   ? "20 draws, no closed returns, divergence exact"
                   : "failures at " + failures;
  return res;
}

CriterionResult energy_behavior(int) {
  CriterionResult res;
  res.id = 5;
  res.name = "energy conservation and dissipation identity";
  const auto t0 = Clock::now();
  std::ostringstream d;

  IntegrationOptions copts;
  copts.rel_tol = 1e-10;
  copts.abs_tol = 1e-12;
  copts.max_time = 100.0;
  const Parameters cons(0.0, 1.0, 1.0, 3);
  const Trajectory ctraj = integrate(cons, PlaneState(1.0, 0.0), copts);
  const double drift = energy_drift(cons, ctraj);
  const bool drift_ok = drift < 1e-8;
  d << "drift=" << std::scientific << drift << (drift_ok ? " ok; " : " FAIL; ");

  const Parameters damped(0.5, 1.0, 1.0, 3);
  IntegrationOptions dopts;
  dopts.rel_tol = 1e-10;
  dopts.abs_tol = 1e-12;
  dopts.max_time = 20.0;
  dopts.max_step = 5e-3;
  const Trajectory dtraj = integrate(damped, PlaneState(1.0, 0.0), dopts);
  double worst_rel = 0.0;
  const auto& smp = dtraj.samples;
  for (std::size_t i = 2; i + 2 < smp.size(); ++i) {
    const double y = smp[i].state.y();
    if (std::fabs(y) <= 0.1) continue;
    std::vector<double> ts, hs;
    for (std::size_t j = i - 2; j <= i + 2; ++j) {
      ts.push_back(smp[j].t);
      hs.push_back(total_energy(damped, smp[j].state));
    }
    const std::vector<double> w = fd_first_derivative_weights(smp[i].t, ts);
    double dh = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) dh += w[j] * hs[j];
    const double expected = dissipation_rate(damped, smp[i].state);
    worst_rel = std::max(worst_rel, std::fabs(dh - expected) / std::fabs(expected));
  }
  const bool diss_ok = worst_rel < 1e-5 && smp.size() > 100;
  d << "dissipation identity worst rel err=" << worst_rel << (diss_ok ? " ok" : " FAIL");

  res.passed = drift_ok && diss_ok;
  res.seconds = seconds_since(t0);
  res.detail = d.str();
  return res;
}

CriterionResult cycle_taxonomy(int) {
  CriterionResult res;
  res.id = 6;
  res.name = "connection-cycle taxonomy";
  const auto t0 = Clock::now();
  std::ostringstream d;
  res.passed = true;

  auto expect = [&](const Parameters& p, CycleKind kind, double level,
                    std::vector<double> saddle_xs) {
    const CycleReport rep = detect_connection_cycles(p);
    bool ok = rep.kind == kind && std::fabs(rep.level - level) < 1e-12 &&
              rep.saddles.size() == saddle_xs.size();
    if (ok)
      for (std::size_t i = 0; i < saddle_xs.size(); ++i)
        ok = ok && std::fabs(rep.saddles[i].x() - saddle_xs[i]) < 1e-12;
    res.passed = res.passed && ok;
    d << to_string(kind) << (ok ? " ok; " : " FAIL; ");
  };

  expect(Parameters(0.0, -1.0, 1.0, 3), CycleKind::Heteroclinic, 0.25, {-1.0, 1.0});
  expect(Parameters(0.0, 1.0, -1.0, 2), CycleKind::Homoclinic, 0.0, {0.0});
  expect(Parameters(0.0, 1.0, -1.0, 3), CycleKind::DoubleHomoclinic, 0.0, {0.0});

  res.seconds = seconds_since(t0);
  res.detail = d.str();
  return res;
}

// Expected infinite-equilibrium census for m = 1, straight from the
// discriminant case split.
std::string infinity_m1_expectation(const Parameters& p) {
  const double s = p.epsilon + p.sigma;
  const double disc = p.alpha * p.alpha - 4.0 * s;
  if (near_zero(p, disc)) return "saddle-node";
  if (disc < 0.0) return "none";
  if (s < 0.0) return "stable-node,unstable-node";
  return p.alpha > 0.0 ? "saddle,unstable-node" : "stable-node,saddle";
}

CriterionResult infinity_analysis(int workers) {
  CriterionResult res;
  res.id = 7;
  res.name = "infinite equilibria, sectors, blow-up consistency";
  const auto t0 = Clock::now();
  std::ostringstream d;
  res.passed = true;

  // m = 1 existence/kind split, including the zero-discriminant saddle-node.
  int checked = 0;
  for (double a : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    for (double e : kSignGrid) {
      for (double s : kSignGrid) {
        const Parameters p(a, e, s, 1);
        if (near_zero(p, e + s)) continue;
        std::string got;
        const auto pts = infinite_equilibria(p);
        if (pts.empty()) got = "none";
        for (std::size_t i = 0; i < pts.size(); ++i)
          got += std::string(i ? "," : "") + to_string(pts[i].kind);
        // The proposition lists P+ then P-; ours is ordered the same way.
        if (got != infinity_m1_expectation(p)) {
          res.passed = false;
          d << "m=1 kinds mismatch at (" << a << "," << e << "," << s << "): " << got << "; ";
        }
        for (const auto& ie : pts)
          if (chart_field(p, ie.chart, ie.u, 0.0).norm() > 1e-10) {
            res.passed = false;
            d << "chart field not zero at infinite point; ";
          }
        ++checked;
      }
    }
  }
  {
    const Parameters p(2.0, 0.5, 0.5, 1);  // zero discriminant
    const auto pts = infinite_equilibria(p);
    const bool ok = pts.size() == 1 && pts[0].kind == InfiniteKind::SaddleNode &&
                    std::fabs(pts[0].u + 1.0) < 1e-12;
    res.passed = res.passed && ok;
    d << "saddle-node case " << (ok ? "ok; " : "FAIL; ");
  }

  // Sector structures for m > 1.
  for (int m : {2, 3, 4, 5}) {
    for (double e : {-1.0, 1.0}) {
      for (double s : {-1.0, 1.0}) {
        const Parameters p(0.25, e, s, m);
        const SectorStructure got = sector_structure_at_infinity(p);
        SectorStructure want;
        if (m % 2 == 0) want = {0, 3, 0};
        else if (e > 0.0) want = {2, 0, 0};
        else if (s < 0.0) want = {0, 2, 2};
        else want = {0, 4, 2};
        if (!(got == want)) {
          res.passed = false;
          d << "sectors mismatch at m=" << m << " e=" << e << " s=" << s << "; ";
        }
      }
    }
  }
  d << checked << " m=1 points ok; sectors ok; ";

  // Blow-up consistency: 100 samples per branch, several parameter sets.
  std::vector<Eigen::Vector2d> samples;
  for (int i = 1; i <= 10; ++i)
    for (int j = 1; j <= 10; ++j)
      samples.emplace_back(0.05 * i, j <= 5 ? 0.1 * j : 0.1 * (5 - j));  // w in [-0.5, 0.5]

  struct Job {
    Parameters p;
    BlowupBranch b;
    double err = 0.0;
  };
  std::vector<Job> jobs;
  for (int m : {2, 3, 4, 5})
    for (auto params : {Parameters(0.0, 1.0, 1.0, m), Parameters(1.0, -1.0, 1.0, m),
                        Parameters(-0.5, 1.0, -1.0, m)})
      for (auto dir : {BlowupDirection::XPlus, BlowupDirection::XMinus,
                       BlowupDirection::YPlus, BlowupDirection::YMinus})
        jobs.push_back({params, BlowupBranch::for_degree(m, dir), 0.0});

  parallel_for(jobs.size(), workers, [&](std::size_t i) {
    jobs[i].err = chart_to_blowup_consistency(jobs[i].p, jobs[i].b, samples);
  });
  double worst = 0.0;
  for (const Job& j : jobs) worst = std::max(worst, j.err);
  const bool blow_ok = worst < 1e-9;
  res.passed = res.passed && blow_ok;
  d << "blow-up worst rel err=" << std::scientific << worst << (blow_ok ? " ok" : " FAIL");

  res.seconds = seconds_since(t0);
  res.detail = d.str();
  return res;
}

CriterionResult portrait_totality(int workers) {
  CriterionResult res;
  res.id = 8;
  res.name = "portrait totality and panel-census coherence";
  const auto t0 = Clock::now();
  struct Entry {
    std::string key;
    std::string signature;
    bool flagged = false;
    bool malformed = false;
  };
  std::vector<Parameters> grid;
  for (int m = 1; m <= 6; ++m)
    for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0})
      for (double s : kSignGrid)
        for (double e : kSignGrid) grid.push_back(Parameters(a, e, s, m));

  std::vector<Entry> entries(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    const PortraitClass pc = classify_portrait(grid[i]);
    Entry& en = entries[i];
    const bool has_panel = pc.panel != 0;
    const bool has_marker = pc.boundary.has_value();
    en.malformed = has_panel == has_marker;  // exactly one of the two
    en.flagged = has_marker;
    if (has_panel) {
      en.key = std::string(to_string(pc.figure)) + ":" + pc.panel;
      en.signature = census_signature(census(grid[i]));
    }
  });

  int flagged = 0, malformed = 0;
  std::map<std::string, std::string> first_sig;
  std::string mismatches;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& en = entries[i];
    if (en.malformed) ++malformed;
    if (en.flagged) {
      ++flagged;
      continue;
    }
    if (en.key.empty()) continue;
    auto [it, inserted] = first_sig.emplace(en.key, en.signature);
    if (!inserted && it->second != en.signature)
      mismatches += en.key + " has two census signatures; ";
  }
  res.seconds = seconds_since(t0);
  res.passed = malformed == 0 && mismatches.empty();
  std::ostringstream d;
  d << grid.size() << " points, " << first_sig.size() << " panels, " << flagged
    << " flagged degenerate/uncovered, " << malformed << " malformed. " << mismatches;
  res.detail = d.str();
  return res;
}

CriterionResult oracle_agreement(int workers) {
  CriterionResult res;
  res.id = 9;
  res.name = "center-focus oracle agreement";
  const auto t0 = Clock::now();
  std::vector<Parameters> grid;
  for (int m = 1; m <= 5; ++m)
    for (double a : {0.0, -0.5, 0.5})
      for (double s : kSignGrid)
        for (double e : kSignGrid) {
          const Parameters p(a, e, s, m);
          const DegeneracyFlags f = degeneracy(p);
          if (f.sigma_zero || f.discriminant_zero) continue;
          if (m == 1 && f.on_table_boundary) continue;  // epsilon + sigma = 0
          grid.push_back(p);
        }

  struct Row {
    bool disagree = false;
    std::string note;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    const Parameters& p = grid[i];
    const bool predicted = center_at_origin(p).is_local_center;
    const std::vector<double> radii = center_test_radii(p, {0.1, 0.45});
    const CenterTestResult numeric = numeric_center_test(p, radii);
    if (numeric.is_center != predicted) {
      rows[i].disagree = true;
      std::ostringstream msg;
      msg << "(" << p.alpha << "," << p.epsilon << "," << p.sigma << ",m=" << p.m
          << "): predicate " << predicted << " numeric " << numeric.is_center << "; ";
      rows[i].note = msg.str();
    }
  });

  int disagreements = 0;
  std::string notes;
  for (const Row& r : rows) {
    if (r.disagree) ++disagreements;
    notes += r.note;
  }
  res.seconds = seconds_since(t0);
  res.passed = disagreements == 0;
  std::ostringstream d;
  d << grid.size() << " grid points, " << disagreements << " disagreements. " << notes;
  res.detail = d.str();
  return res;
}

}  // namespace

std::vector<double> fd_first_derivative_weights(double x0, const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  constexpr int kOrder = 1;
  std::vector<std::vector<double>> c(n, std::vector<double>(kOrder + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, kOrder);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> weights(n);
  for (int j = 0; j < n; ++j) weights[j] = c[j][kOrder];
  return weights;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "tables") return {1};
  if (suite == "centers") return {2, 9};
  if (suite == "infinity") return {3, 7};
  if (suite == "cycles") return {6};
  if (suite == "limitcycles") return {4};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9};
  throw InvalidParameters("unknown suite: " + suite);
}

CriterionResult run_criterion(int id, int workers) {
  switch (id) {
    case 1: return table_reproduction(workers);
    case 2: return global_center_returns(workers);
    case 3: return even_degree_escape(workers);
    case 4: return no_limit_cycles(workers);
    case 5: return energy_behavior(workers);
    case 6: return cycle_taxonomy(workers);
    case 7: return infinity_analysis(workers);
    case 8: return portrait_totality(workers);
    case 9: return oracle_agreement(workers);
  }
  throw InvalidParameters("criterion id out of range: " + std::to_string(id));
}

std::vector<CriterionResult> run_suite(const std::string& suite, int workers) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, workers));
  return out;
}

}  // namespace duffing::checks
