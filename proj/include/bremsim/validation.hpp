#pragma once

#include <string>
#include <vector>

namespace bremsim {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Norm conservation, Ehrenfest consistency and its dt convergence,
// Cauchy-Schwarz ordering of the two energies, the free-Gaussian width law,
// split-step against Crank-Nicolson, the dipole sphere integral and the
// first moment identity. Each check runs a small, fixed configuration.
std::vector<CheckResult> run_validation_suite();

}  // namespace bremsim
