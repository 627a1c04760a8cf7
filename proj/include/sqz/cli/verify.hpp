#pragma once

#include <string>
#include <vector>

#include "sqz/cli/config.hpp"

namespace sqz::cli {

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    const CheckResult* first_failure() const;
    std::string text() const;
};

/// Executes the invariant suite for the configured schedule and initial state.
VerifyReport verify_checks(const RunConfig& cfg);

} // namespace sqz::cli
