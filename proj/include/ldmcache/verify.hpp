#pragma once

#include <string>
#include <vector>

namespace ldmcache {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Exhaustive invariant checks over the channel cube [1..max_n]^3. Each
// returns a single pass/fail with a short summary; failures name the first
// offending channel. All comparisons are exact rational comparisons.

CheckResult check_regime_totality(int max_n);
CheckResult check_boundary_consistency(int max_n, int grid);
CheckResult check_tightness(int max_n, int grid);
CheckResult check_endpoints(int max_n);
CheckResult check_convexity(int max_n, int grid);
CheckResult check_monotonicity(int max_n, int grid);
CheckResult check_corner_points(int max_n, int grid);
CheckResult check_corner_schemes(int max_n, int zero_error_trials);
CheckResult check_timeshare_exactness(int max_n, int grid);
CheckResult check_mu0_rates(int max_n, int large_file_size);
CheckResult check_recursion(int max_n);
CheckResult check_converse_corpus(int max_n);
CheckResult check_oracle_corners(int max_component);
CheckResult check_curve_shape(int max_n);

struct VerifyOptions {
    int max_n = 8;
    int grid = 16;
    int zero_error_trials = 200;
};

/// The full invariant suite behind `ldmcache verify`.
std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options);

}  // namespace ldmcache
