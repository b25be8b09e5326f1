#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coslab/json_io.hpp"

namespace coslab {

/// One named invariant with its outcome. `anchor` states the identity or law
/// the check exercises, as a formula; `worst` is the worst residual (or
/// deviation) observed across all trials.
struct CheckResult {
    std::string name;
    std::string anchor;
    std::string tolerance_name;
    double tolerance = 0.0;
    double worst = 0.0;
    long trials = 0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20260810ull;
    std::map<std::string, double> tolerance_overrides;
    std::vector<std::string> family_files; // extra conformance targets
};

/// Runs every invariant suite. Deterministic for a fixed seed: each trial
/// draws from its own derived stream and results are reduced in trial order,
/// so OpenMP scheduling cannot change a single bit of the report.
std::vector<CheckResult> run_verify_suites(const VerifyOptions& options);

json verify_report_to_json(const std::vector<CheckResult>& results,
                           const VerifyOptions& options, bool reproducible);

std::string render_verify_report(const std::vector<CheckResult>& results,
                                 const VerifyOptions& options, ReportFormat format,
                                 bool reproducible);

bool all_pass(const std::vector<CheckResult>& results);

} // namespace coslab
