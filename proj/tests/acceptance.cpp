// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Everything is checked in exact rational arithmetic at full scale.

#include <chrono>
#include <cstdio>
#include <string>

#include "ldmcache/verify.hpp"

namespace {

int failures = 0;

void report(int index, const char* title, const ldmcache::CheckResult& result) {
    std::printf("%s criterion %d (%s): %s\n", result.pass ? "PASS" : "FAIL", index, title,
                result.detail.c_str());
    if (!result.pass) ++failures;
}

}  // namespace

int main() {
    using namespace ldmcache;
    const auto start = std::chrono::steady_clock::now();

    report(1, "tightness sweep", check_tightness(8, 16));
    report(2, "cache-free and full-cache endpoints", check_endpoints(8));
    report(3, "corner scheme reproduction", check_corner_schemes(8, 200));
    {
        const CheckResult convex = check_convexity(8, 16);
        const CheckResult mono = check_monotonicity(8, 16);
        CheckResult both;
        both.pass = convex.pass && mono.pass;
        both.detail = convex.pass && mono.pass ? convex.detail + "; " + mono.detail
                                               : (convex.pass ? mono.detail : convex.detail);
        report(4, "convexity and monotonicity", both);
    }
    report(5, "converse respected by every scheme", check_converse_corpus(8));
    report(6, "relay reconstruction", check_recursion(8));
    report(7, "oracle recovers the corner rate", check_oracle_corners(4));
    report(8, "cache-free scheme rates", check_mu0_rates(8, 256));
    report(9, "curve shape", check_curve_shape(8));

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    std::printf("%d/9 criteria passed in %lld ms\n", 9 - failures,
                static_cast<long long>(elapsed));
    return failures == 0 ? 0 : 1;
}
