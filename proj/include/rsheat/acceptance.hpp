#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsheat::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Worst observed value of the criterion's metric.
    double measured = 0.0;
    double threshold = 0.0;
    /// One line per sub-check.
    std::vector<std::string> details;
};

struct AcceptanceOptions {
    unsigned workers = 0;
};

/// Number of criteria run_all evaluates.
inline constexpr int kCriterionCount = 9;

/// Runs a single criterion (1-based). Exceptions inside a criterion turn
/// into a failed result carrying the message.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_all(const AcceptanceOptions& opts = {});

/// "PASS [n] name: measured ... threshold ..." plus indented details.
void write_report(std::ostream& out, const std::vector<CriterionResult>& results);

/// <Delta f, g> - <f, Delta g> on (0, 1) for f = sqrt(x) chi, g = sqrt(x) log(x) chi,
/// chi a smooth cutoff equal to 1 on [0, 1/2] and 0 on [3/4, 1].
double green_identity_pairing();
/// conj(c_-(f)) c_+(g) - conj(c_+(f)) c_-(g) for the same pair, with the
/// coefficients extracted numerically.
double green_identity_boundary_form();

}  // namespace rsheat::acceptance
