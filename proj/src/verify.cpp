#include "ldmcache/verify.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

#include "ldmcache/dtb.hpp"
#include "ldmcache/simulate.hpp"

namespace ldmcache {

namespace {

constexpr Regime kAllRegimes[] = {Regime::R1,  Regime::R1p, Regime::R2,  Regime::R2p, Regime::R31,
                                  Regime::R32, Regime::R3p, Regime::R4,  Regime::R4p};

template <typename Fn>
void for_each_channel(int max_n, Fn&& fn) {
    for (int nd = 1; nd <= max_n; ++nd)
        for (int nr = 1; nr <= max_n; ++nr)
            for (int ns = 1; ns <= max_n; ++ns) fn(ChannelTriple(nd, nr, ns));
}

CheckResult pass_result(std::string name, std::string detail) {
    return CheckResult{std::move(name), true, std::move(detail)};
}

CheckResult fail_result(std::string name, std::string detail) {
    return CheckResult{std::move(name), false, std::move(detail)};
}

bool in_r31_with_strong_relay(const ChannelTriple& n) {
    return regime_predicate(Regime::R31, n) && n.nr >= n.ns;
}

Rational mu0_value(const ChannelTriple& n) {
    return std::max({Rational(2, std::max(n.nd, n.ns)), Rational(1, n.ns),
                     Rational(1, std::max(n.nd, n.nr))});
}

/// Zero-error spot check: random contents for every demand vector must be
/// decoded bit-exactly, matching the rank criterion.
std::optional<std::string> sampled_zero_error(const LinearScheme& scheme, int trials,
                                              std::mt19937& rng) {
    for (int i = 0; i < scheme.placement.file_count; ++i) {
        for (int j = 0; j < scheme.placement.file_count; ++j) {
            const Demand d{i, j};
            for (int trial = 0; trial < trials; ++trial) {
                const Files files =
                    random_files(scheme.placement.file_count, scheme.file_size, rng);
                const Transcript tr = simulate_delivery(scheme, files, d);
                if (!tr.consistent()) return "transcript violates the channel law";
                const auto decoded = decode_transcript(scheme, tr);
                if (!decoded) return "decoder found an undetermined bit";
                if (decoded->rn_file != files[d.first] || decoded->ue_file != files[d.second])
                    return "decoded contents differ from the originals";
            }
        }
    }
    return std::nullopt;
}

}  // namespace

CheckResult check_regime_totality(int max_n) {
    const std::string name = "regime-totality";
    int count = 0;
    std::string failure;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        ++count;
        const RegimeLabel label = classify_regime(n);
        if (!regime_predicate(label.fine, n))
            failure = "label predicate violated at " + n.str();
        bool covered = false;
        for (const Regime r : kAllRegimes) covered = covered || regime_predicate(r, n);
        if (!covered) failure = "no regime covers " + n.str();
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(count) + " channels, one label each, full coverage");
}

CheckResult check_boundary_consistency(int max_n, int grid) {
    const std::string name = "boundary-consistency";
    int boundary_channels = 0;
    std::string failure;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        std::vector<Regime> claims;
        for (const Regime r : kAllRegimes)
            if (regime_predicate(r, n)) claims.push_back(r);
        if (claims.size() > 1) ++boundary_channels;
        for (std::size_t a = 0; a < claims.size() && failure.empty(); ++a) {
            for (std::size_t b = a + 1; b < claims.size() && failure.empty(); ++b) {
                for (int k = 0; k <= grid; ++k) {
                    const Rational mu(k, grid);
                    if (!(regime_formula(claims[a], mu, n) == regime_formula(claims[b], mu, n))) {
                        failure = "formulas of " + std::string(to_string(claims[a])) + " and " +
                                  std::string(to_string(claims[b])) + " disagree at " + n.str() +
                                  ", mu=" + mu.str();
                        break;
                    }
                }
            }
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(boundary_channels) +
                                 " boundary channels agree on all shared formulas");
}

CheckResult check_tightness(int max_n, int grid) {
    const std::string name = "tightness";
    int checks = 0;
    std::string failure;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        for (int k = 0; k <= grid; ++k) {
            const Rational mu(k, grid);
            const Rational formula = dtb_optimal(mu, n).optimal;
            const Rational bound = dtb_lower_bound(mu, n);
            ++checks;
            if (!(formula == bound)) {
                failure = "formula " + formula.str() + " != bound " + bound.str() + " at " +
                          n.str() + ", mu=" + mu.str();
                return;
            }
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(checks) + " exact equalities");
}

CheckResult check_endpoints(int max_n) {
    const std::string name = "endpoints";
    std::string failure;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        if (!(dtb_optimal(Rational(0), n).optimal == mu0_value(n)))
            failure = "cache-free value mismatch at " + n.str();
        if (!(dtb_optimal(Rational(1), n).optimal == Rational(1, std::max(n.nd, n.nr))))
            failure = "full-cache value mismatch at " + n.str();
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, "cache-free and full-cache values match on every channel");
}

CheckResult check_convexity(int max_n, int grid) {
    const std::string name = "convexity";
    std::string failure;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        const auto curve = dtb_curve(n, grid);
        for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
            const Rational mid = curve[i].second;
            const Rational avg = (curve[i - 1].second + curve[i + 1].second) / Rational(2);
            if (mid > avg) {
                failure = "midpoint above chord at " + n.str() + ", mu=" + curve[i].first.str();
                return;
            }
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, "exact midpoint convexity on the whole grid");
}

CheckResult check_monotonicity(int max_n, int grid) {
    const std::string name = "monotonicity";
    std::string failure;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        const auto curve = dtb_curve(n, grid);
        for (std::size_t i = 1; i < curve.size(); ++i) {
            if (curve[i].second > curve[i - 1].second) {
                failure = "value increases with cache size at " + n.str();
                return;
            }
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, "latency never increases with cache size");
}

namespace {

Rational interpolate_corners(const std::vector<std::pair<Rational, Rational>>& corners,
                             const Rational& mu) {
    for (std::size_t i = 1; i < corners.size(); ++i) {
        if (mu <= corners[i].first) {
            const auto& [x0, y0] = corners[i - 1];
            const auto& [x1, y1] = corners[i];
            return y0 + (y1 - y0) * (mu - x0) / (x1 - x0);
        }
    }
    return corners.back().second;
}

}  // namespace

CheckResult check_corner_points(int max_n, int grid) {
    const std::string name = "corner-points";
    std::string failure;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        const auto corners = corner_points(n);
        if (!(corners.front().first == Rational(0)) || !(corners.back().first == Rational(1))) {
            failure = "corner list does not span [0,1] at " + n.str();
            return;
        }
        for (std::size_t i = 1; i < corners.size(); ++i) {
            if (!(corners[i - 1].first < corners[i].first) ||
                corners[i].second > corners[i - 1].second) {
                failure = "corner list not monotone at " + n.str();
                return;
            }
        }
        for (int k = 0; k <= grid; ++k) {
            const Rational mu(k, grid);
            if (!(interpolate_corners(corners, mu) == dtb_optimal(mu, n).optimal)) {
                failure = "corner interpolation misses the curve at " + n.str() +
                          ", mu=" + mu.str();
                return;
            }
        }
        if (in_r31_with_strong_relay(n)) {
            // Closed-form corner locations for this regime.
            const Rational mu_b(2 * (n.nr - n.nd), n.ns + 2 * (n.nr - n.nd));
            const Rational dtb_b(2, n.ns + 2 * (n.nr - n.nd));
            const Rational mu_c(n.nd + n.nr - n.ns, n.nr);
            const Rational dtb_c(1, n.nr);
            auto has = [&](const Rational& mu, const Rational& val) {
                return std::any_of(corners.begin(), corners.end(), [&](const auto& pt) {
                    return pt.first == mu && pt.second == val;
                });
            };
            if (!has(mu_b, dtb_b) || !has(mu_c, dtb_c)) {
                failure = "closed-form corners missing from the list at " + n.str();
                return;
            }
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, "exact breakpoints reproduce the curve everywhere");
}

CheckResult check_corner_schemes(int max_n, int zero_error_trials) {
    const std::string name = "corner-achievability";
    int schemes = 0;
    std::string failure;
    std::mt19937 rng(7);
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty() || !in_r31_with_strong_relay(n)) return;
        const Rational mu_b(2 * (n.nr - n.nd), n.ns + 2 * (n.nr - n.nd));
        const Rational dtb_b(2, n.ns + 2 * (n.nr - n.nd));
        const Rational mu_c(n.nd + n.nr - n.ns, n.nr);
        const Rational dtb_c(1, n.nr);
        const std::pair<SchemePoint, std::pair<Rational, Rational>> cases[] = {
            {build_corner_scheme_b(n), {mu_b, dtb_b}},
            {build_corner_scheme_c(n), {mu_c, dtb_c}},
        };
        for (const auto& [point, expected] : cases) {
            ++schemes;
            if (!(point.mu == expected.first) || !(point.dtb == expected.second)) {
                failure = "corner coordinates off at " + n.str();
                return;
            }
            if (!(point.dtb == dtb_optimal(point.mu, n).optimal)) {
                failure = "corner misses the optimal curve at " + n.str();
                return;
            }
            const VerificationReport report = check_decodability(point.scheme);
            if (!report.all_ok) {
                failure = "corner scheme fails decoding at " + n.str();
                return;
            }
            if (report.achieved_dtb < report.lower_bound) {
                failure = "corner scheme beats the converse at " + n.str();
                return;
            }
            if (const auto err = sampled_zero_error(point.scheme, zero_error_trials, rng)) {
                failure = *err + " at " + n.str();
                return;
            }
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(schemes) + " corner schemes exact and zero-error");
}

CheckResult check_timeshare_exactness(int max_n, int grid) {
    const std::string name = "timeshare-exactness";
    int points = 0;
    std::string failure;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty() || !in_r31_with_strong_relay(n)) return;
        for (int k = 0; k <= grid; ++k) {
            const Rational mu(k, grid);
            const auto point = scheme_for(mu, n);
            if (!point) {
                failure = "dispatch refused covered channel " + n.str();
                return;
            }
            ++points;
            if (!(point->mu == mu) || !(point->dtb == dtb_optimal(mu, n).optimal)) {
                failure = "time-shared point off the curve at " + n.str() + ", mu=" + mu.str();
                return;
            }
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(points) + " dispatched points sit on the curve");
}

CheckResult check_mu0_rates(int max_n, int large_file_size) {
    const std::string name = "cache-free-rates";
    std::string failure;
    int exact = 0, bounded = 0;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        const Rational value = mu0_value(n);
        if (n.nd >= n.ns) {
            const LinearScheme scheme = build_scheme_mu0(n, 2 * n.ns * n.nd);
            if (!(scheme.dtb() == value)) {
                failure = "exact rate missed at " + n.str() + ": " + scheme.dtb().str() +
                          " vs " + value.str();
                return;
            }
            ++exact;
        }
        if (n.ns >= n.nd) {
            const LinearScheme scheme = build_scheme_mu0(n, large_file_size);
            const Rational gap = scheme.dtb() - value;
            if (gap < Rational(0) || gap > Rational(2, large_file_size)) {
                failure = "rate gap " + gap.str() + " out of range at " + n.str();
                return;
            }
            ++bounded;
        }
        // Small canonical instance must decode for every demand.
        const auto small = scheme_for(Rational(0), n);
        const VerificationReport report = check_decodability(small->scheme);
        if (!report.all_ok) failure = "cache-free scheme fails decoding at " + n.str();
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(exact) + " exact rates, " + std::to_string(bounded) +
                                 " within 2/L of the target");
}

CheckResult check_recursion(int max_n) {
    const std::string name = "reconstruction";
    int runs = 0;
    std::string failure;
    std::mt19937 rng(11);
    auto exercise = [&](const LinearScheme& scheme, const ChannelTriple& n) {
        if (!failure.empty()) return;
        for (int i = 0; i < 2 && failure.empty(); ++i) {
            for (int j = 0; j < 2 && failure.empty(); ++j) {
                const Files files = random_files(2, scheme.file_size, rng);
                ++runs;
                if (!recursive_reconstruct(scheme, files, Demand{i, j}).success)
                    failure = "reconstruction failed at " + n.str();
            }
        }
    };
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty() || n.ns < n.nd) return;
        exercise(scheme_for(Rational(0), n)->scheme, n);
        exercise(build_full_cache_scheme(n).scheme, n);
        // A longer run so the relay pipeline actually fills where it can.
        exercise(build_scheme_mu0(n, 3 * scheme_for(Rational(0), n)->scheme.file_size + 1), n);
        if (in_r31_with_strong_relay(n)) {
            exercise(build_corner_scheme_b(n).scheme, n);
            exercise(build_corner_scheme_c(n).scheme, n);
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(runs) + " reconstructions matched bit-exactly");
}

CheckResult check_converse_corpus(int max_n) {
    const std::string name = "converse-respected";
    int schemes = 0;
    std::string failure;
    auto inspect = [&](const SchemePoint& point) {
        if (!failure.empty()) return;
        ++schemes;
        if (point.dtb < dtb_lower_bound(point.mu, point.scheme.n))
            failure = "scheme beats the converse at " + point.scheme.n.str() +
                      ", mu=" + point.mu.str();
    };
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        inspect(*scheme_for(Rational(0), n));
        inspect(build_full_cache_scheme(n));
        const LinearScheme big = build_scheme_mu0(n, 64);
        inspect(SchemePoint{big.mu(), big.dtb(), big});
        if (in_r31_with_strong_relay(n)) {
            inspect(build_corner_scheme_b(n));
            inspect(build_corner_scheme_c(n));
            for (int k = 1; k < 8; ++k) inspect(*scheme_for(Rational(k, 8), n));
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(schemes) + " schemes at or above the bound");
}

CheckResult check_oracle_corners(int max_component) {
    const std::string name = "oracle-corners";
    int found = 0;
    std::string failure;
    for_each_channel(max_component, [&](const ChannelTriple& n) {
        if (!failure.empty() || !in_r31_with_strong_relay(n)) return;
        const Rational mu(n.nd + n.nr - n.ns, n.nr);
        const auto result = brute_force_search(n, mu, 8, 1);
        if (!result) {
            failure = "search found nothing at " + n.str();
            return;
        }
        if (!(result->dtb == Rational(1, n.nr))) {
            failure = "search result " + result->dtb.str() + " != 1/" + std::to_string(n.nr) +
                      " at " + n.str();
            return;
        }
        if (result->dtb < dtb_lower_bound(mu, n)) {
            failure = "search beats the converse at " + n.str();
            return;
        }
        ++found;
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, std::to_string(found) + " corner rates recovered by search");
}

CheckResult check_curve_shape(int max_n) {
    const std::string name = "curve-shape";
    std::string failure;

    // Representative strong-relay channel: breakpoints, no more, no fewer.
    const ChannelTriple rep(2, 4, 3);
    const auto corners = corner_points(rep);
    const int grid = 56;  // multiple of every corner denominator
    const auto curve = dtb_curve(rep, grid);
    std::vector<Rational> slope_changes;
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const Rational left = curve[i].second - curve[i - 1].second;
        const Rational right = curve[i + 1].second - curve[i].second;
        if (!(left == right)) slope_changes.push_back(curve[i].first);
    }
    std::vector<Rational> interior;
    for (std::size_t i = 1; i + 1 < corners.size(); ++i) interior.push_back(corners[i].first);
    if (slope_changes != interior) return fail_result(name, "breakpoints differ from corners");
    for (int k = 0; k <= grid; ++k) {
        if (!(interpolate_corners(corners, curve[k].first) == curve[k].second))
            return fail_result(name, "interpolated corners miss the emitted curve");
    }

    // Where caching cannot help, the curve is flat (non-strict membership,
    // so boundary channels count too).
    int flat = 0;
    for_each_channel(max_n, [&](const ChannelTriple& n) {
        if (!failure.empty()) return;
        if (!regime_predicate(Regime::R3p, n) && !regime_predicate(Regime::R4p, n)) return;
        ++flat;
        const Rational floor(1, std::max(n.nd, n.nr));
        for (const auto& [mu, value] : dtb_curve(n, 16)) {
            if (!(value == floor)) {
                failure = "curve not constant at " + n.str() + ", mu=" + mu.str();
                return;
            }
        }
    });
    if (!failure.empty()) return fail_result(name, failure);
    return pass_result(name, "breakpoints exact; " + std::to_string(flat) +
                                 " no-benefit channels flat");
}

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options) {
    std::vector<CheckResult> results;
    results.push_back(check_regime_totality(std::max(options.max_n, 10)));
    results.push_back(check_tightness(options.max_n, options.grid));
    results.push_back(check_endpoints(options.max_n));
    results.push_back(check_convexity(options.max_n, options.grid));
    results.push_back(check_monotonicity(options.max_n, options.grid));
    results.push_back(check_boundary_consistency(options.max_n, 8));
    results.push_back(check_corner_points(options.max_n, options.grid));
    results.push_back(check_corner_schemes(options.max_n, options.zero_error_trials));
    results.push_back(check_timeshare_exactness(options.max_n, 8));
    results.push_back(check_mu0_rates(options.max_n, 256));
    results.push_back(check_recursion(options.max_n));
    results.push_back(check_converse_corpus(options.max_n));
    results.push_back(check_curve_shape(options.max_n));
    return results;
}

}  // namespace ldmcache
