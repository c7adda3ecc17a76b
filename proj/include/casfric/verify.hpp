#pragma once

#include <string>
#include <vector>

#include "casfric/quadrature.hpp"

namespace casfric {

struct VerifyOptions {
  /// Comma list of check names, or "default"/"all" for every check, or
  /// ""/"none" for no checks.
  std::string select = "default";
  int qhat_draws = 100;     // randomized segment-level oracle comparisons
  int loop_draws = 20;      // randomized full-loop oracle comparisons
  double pair_periods = 50.0;  // duration of the pair-level check, in
                               // response periods
  unsigned seed = 20260810;
  QuadratureSpec quad;
};

struct VerifyCheck {
  std::string name;
  bool pass;
  double achieved;   // the measured error or discriminating quantity
  double tolerance;  // the bound it was held against
  std::string detail;
};

/// Names: sinc-window, qhat-segment, qhat-loop, zint, torque, crossterm,
/// pairlevel. Unknown names in `select` raise DomainError.
std::vector<VerifyCheck> run_verify_suite(const VerifyOptions& opts);

}  // namespace casfric
