// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include "duffing/checks.hpp"

#include <cstdio>
#include <thread>

int main() {
  const int workers = std::max(1u, std::thread::hardware_concurrency());
  bool all_ok = true;
  for (int id : duffing::checks::suite_criteria("all")) {
    const duffing::checks::CriterionResult r = duffing::checks::run_criterion(id, workers);
    std::printf("[%s] criterion %d: %s (%.3f s)\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
    if (!r.passed) std::printf("       %s\n", r.detail.c_str());
    all_ok = all_ok && r.passed;
  }
  return all_ok ? 0 : 1;
}
