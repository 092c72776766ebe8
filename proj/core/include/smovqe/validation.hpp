#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace smovqe {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double expected = 0.0;
  std::string detail;
};

struct ValidationOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 20240601;
};

/// Monte-Carlo checks of the fit statistics and the bias formulas against
/// their definitions: coefficient covariance, first-order bias at several
/// SNRs, the order-2 harmonic bias, offset propagation and shot-variance
/// scaling.
std::vector<ValidationCheck> run_validation_suite(const ValidationOptions& options = {});

}  // namespace smovqe
