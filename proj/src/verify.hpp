#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "constant.hpp"
#include "kernel.hpp"

namespace cfm {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string counterexample;  // first failure, empty when passed
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  bool all_passed() const;
};

// Runs the determinant, telescoping, cross-engine, residual-bound and
// envelope checks over the first `terms` convergents of the constant.
VerifyReport verify(const ConstantSpec& spec, size_t terms, const PrecisionBudget& budget);

}  // namespace cfm
