#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hywig/operators.hpp"

// Self-check suite behind the `verify` command. Checks that conceptually
// depend on the qubit parity/kernel route through injectable hooks, so a
// deliberately broken implementation (mutation smoke test) is caught by
// several independent named checks rather than one.

namespace hywig {

struct VerifyHooks {
    std::function<ComplexOperator()> dv_parity;
    std::function<ComplexOperator(double, double, double)> dv_kernel; // theta, phi, Phi
    VerifyHooks();
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CheckResult> run_verification(const VerifyHooks& hooks = VerifyHooks());

std::string verification_report_json(const std::vector<CheckResult>& results);

} // namespace hywig
