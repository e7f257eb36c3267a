#pragma once

#include <string>
#include <vector>

namespace duffing::checks {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Criterion ids belonging to a named suite
/// (tables | centers | infinity | cycles | limitcycles | all).
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id, int workers = 1);

std::vector<CriterionResult> run_suite(const std::string& suite, int workers = 1);

/// Finite-difference weights for the first derivative at x0 on an arbitrary
/// node set (Fornberg's recurrence); used to differentiate sampled energies.
std::vector<double> fd_first_derivative_weights(double x0, const std::vector<double>& nodes);

}  // namespace duffing::checks
