#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ldmcache/dtb.hpp"
#include "ldmcache/simulate.hpp"
#include "ldmcache/verify.hpp"

namespace {

using namespace ldmcache;

Rational parse_mu_or_exit(const std::string& text) {
    const auto mu = Rational::parse(text);
    if (!mu) {
        std::cerr << "error: --mu expects an exact fraction like 3/4 (decimals are rejected)\n";
        std::exit(2);
    }
    if (*mu < Rational(0) || *mu > Rational(1)) {
        std::cerr << "error: --mu must lie in [0, 1]\n";
        std::exit(2);
    }
    return *mu;
}

std::string active_set(const DtbReport& report) {
    std::string out = "{";
    for (std::size_t i = 0; i < report.active.size(); ++i) {
        if (i) out += ",";
        out += to_string(report.active[i]);
    }
    return out + "}";
}

/// Relative output paths land in $LDMCACHE_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("LDMCACHE_OUTPUT_DIR");
    if (!dir || !*dir) return path;
    std::string base(dir);
    if (base.back() != '/') base += '/';
    return base + path;
}

void write_text(const std::string& path, const std::string& text) {
    const std::string resolved = resolve_output_path(path);
    std::ofstream out(resolved);
    if (!out) {
        std::cerr << "error: cannot write " << resolved << "\n";
        std::exit(2);
    }
    out << text;
}

std::string csv_row(const Rational& mu, const ChannelTriple& n) {
    const DtbReport report = dtb_optimal(mu, n);
    std::ostringstream row;
    row << mu.num() << ',' << mu.den() << ',' << report.optimal.num() << ','
        << report.optimal.den() << ',' << to_string(report.regime.fine) << ',';
    for (std::size_t i = 0; i < report.active.size(); ++i) {
        if (i) row << '|';
        row << to_string(report.active[i]);
    }
    return row.str();
}

int run_regime(const ChannelTriple& n) {
    const RegimeLabel label = classify_regime(n);
    std::cout << "n=" << n.str() << " regime=" << to_string(label.fine)
              << " class=" << to_string(label.coarse) << " I0=" << (label.in_i0 ? "yes" : "no")
              << " I1=" << (label.in_i1 ? "yes" : "no") << "\n";
    std::cout << "tie-break order: C1,C2,C3,C4 then R31,R32,R3'\n";
    return 0;
}

int run_dtb(const ChannelTriple& n, const Rational& mu) {
    const DtbReport report = dtb_optimal(mu, n);
    std::cout << "regime=" << to_string(report.regime.fine) << " dtb=" << report.optimal.str()
              << " active=" << active_set(report) << "\n";
    for (const auto& bound : report.bounds) {
        std::cout << to_string(bound.id) << "=" << bound.value.str()
                  << " applicable=" << (bound.applicable ? "yes" : "no") << "\n";
    }
    return 0;
}

int run_curve(const ChannelTriple& n, int grid, bool corners, const std::string& output) {
    std::ostringstream out;
    out << "mu_num,mu_den,dtb_num,dtb_den,regime,active_bounds\n";
    for (const auto& [mu, value] : dtb_curve(n, grid)) out << csv_row(mu, n) << "\n";
    if (corners) {
        out << "# corners\n";
        for (const auto& [mu, value] : corner_points(n)) out << csv_row(mu, n) << "\n";
    }
    if (output.empty())
        std::cout << out.str();
    else
        write_text(output, out.str());
    return 0;
}

int run_simulate(const ChannelTriple& n, const Rational& mu, unsigned seed, int trials,
                 const std::string& scheme_out, const std::string& transcript_out) {
    const auto point = scheme_for(mu, n);
    if (!point) {
        std::cout << "NotCovered: no constructive scheme for mu=" << mu.str() << " on n="
                  << n.str() << " (regime " << to_string(classify_regime(n).fine)
                  << "); the `oracle` subcommand searches small schemes instead\n";
        return 0;
    }
    const LinearScheme& scheme = point->scheme;
    std::cout << "scheme: n=" << n.str() << " q=" << scheme.word_size() << " T=" << scheme.uses
              << " L=" << scheme.file_size << " mu=" << point->mu.str()
              << " dtb=" << point->dtb.str() << "\n";

    const VerificationReport report = check_decodability(scheme);
    for (const auto& [demand, result] : report.decode) {
        std::cout << "decode d=(" << demand.first + 1 << "," << demand.second + 1
                  << "): rn=" << (result.rn_ok ? "ok" : "FAIL")
                  << " ue=" << (result.ue_ok ? "ok" : "FAIL") << "\n";
    }
    std::cout << "achieved_dtb=" << report.achieved_dtb.str()
              << " lower_bound=" << report.lower_bound.str()
              << " optimal=" << report.optimal.str() << "\n";
    if (report.recursion_ok)
        std::cout << "reconstruction=" << (*report.recursion_ok ? "ok" : "FAIL") << "\n";

    std::mt19937 rng(seed);
    int good = 0;
    std::optional<Transcript> last;
    for (int trial = 0; trial < trials; ++trial) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const Files files = random_files(2, scheme.file_size, rng);
                const Transcript tr = simulate_delivery(scheme, files, Demand{i, j});
                const auto decoded = decode_transcript(scheme, tr);
                if (decoded && tr.consistent() && decoded->rn_file == files[i] &&
                    decoded->ue_file == files[j])
                    ++good;
                if (i == 0 && j == 1) last = tr;
            }
        }
    }
    std::cout << "zero_error: " << good << "/" << trials * 4
              << " random deliveries decoded exactly (seed=" << seed << ")\n";

    if (!scheme_out.empty()) write_text(scheme_out, scheme.to_json(2) + "\n");
    if (!transcript_out.empty() && last) write_text(transcript_out, last->to_json(2) + "\n");
    return report.all_ok && good == trials * 4 ? 0 : 1;
}

struct Range {
    int lo = 1;
    int hi = 1;
};

/// "a" or "a:b", bounded to [1, 64].
Range parse_range_or_exit(const std::string& text) {
    const auto colon = text.find(':');
    Range r;
    try {
        if (colon == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, colon));
            r.hi = std::stoi(text.substr(colon + 1));
        }
    } catch (const std::exception&) {
        std::cerr << "error: range must be N or LO:HI, got '" << text << "'\n";
        std::exit(2);
    }
    if (r.lo < 1 || r.hi > 64 || r.lo > r.hi) {
        std::cerr << "error: range " << text << " outside [1, 64]\n";
        std::exit(2);
    }
    return r;
}

int run_sweep(const Range& rd, const Range& rr, const Range& rs, int grid,
              const std::string& format, const std::string& output) {
    std::ostringstream out;
    const bool csv = format == "csv";
    if (csv) out << "nd,nr,ns,mu_num,mu_den,dtb_num,dtb_den,regime,active_bounds\n";
    bool first = true;
    if (!csv) out << "[";
    // Fixed lexicographic order in (nd, nr, ns, mu).
    for (int nd = rd.lo; nd <= rd.hi; ++nd) {
        for (int nr = rr.lo; nr <= rr.hi; ++nr) {
            for (int ns = rs.lo; ns <= rs.hi; ++ns) {
                const ChannelTriple n(nd, nr, ns);
                for (int k = 0; k <= grid; ++k) {
                    const Rational mu(k, grid);
                    if (csv) {
                        out << nd << ',' << nr << ',' << ns << ',' << csv_row(mu, n) << "\n";
                    } else {
                        const DtbReport report = dtb_optimal(mu, n);
                        if (!first) out << ",";
                        first = false;
                        out << "\n  {\"nd\":" << nd << ",\"nr\":" << nr << ",\"ns\":" << ns
                            << ",\"mu\":\"" << mu.str() << "\",\"dtb\":\""
                            << report.optimal.str() << "\",\"regime\":\""
                            << to_string(report.regime.fine) << "\"}";
                    }
                }
            }
        }
    }
    if (!csv) out << "\n]\n";
    if (output.empty())
        std::cout << out.str();
    else
        write_text(output, out.str());
    return 0;
}

int run_verify(int max_n, int grid, int trials) {
    VerifyOptions options;
    options.max_n = max_n;
    options.grid = grid;
    options.zero_error_trials = trials;
    bool all = true;
    for (const CheckResult& result : run_invariant_suite(options)) {
        all = all && result.pass;
        std::cout << (result.pass ? "PASS" : "FAIL") << " " << result.name << ": " << result.detail
                  << "\n";
    }
    std::cout << (all ? "verification passed" : "verification FAILED") << "\n";
    return all ? 0 : 1;
}

int run_oracle(const ChannelTriple& n, const Rational& mu, int lmax, int tmax,
               const std::string& scheme_out) {
    const auto result = brute_force_search(n, mu, lmax, tmax);
    if (!result) {
        std::cout << "no scheme found within the search budget\n";
        return 0;
    }
    std::cout << "found L=" << result->file_size << " T=" << result->uses
              << " dtb=" << result->dtb.str()
              << " lower_bound=" << dtb_lower_bound(mu, n).str() << "\n";
    if (!scheme_out.empty()) write_text(scheme_out, result->scheme.to_json(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact latency analytics and bit-level delivery simulation for a"
        " cache-aided relay network over the binary deterministic channel"};
    app.require_subcommand(1);

    int nd = 1, nr = 1, ns = 1;
    auto add_channel = [&](CLI::App* cmd) {
        cmd->add_option("--nd", nd, "direct link strength (bits/use)")->required();
        cmd->add_option("--nr", nr, "relay link strength (bits/use)")->required();
        cmd->add_option("--ns", ns, "serving link strength (bits/use)")->required();
    };

    auto* regime = app.add_subcommand("regime", "classify a channel");
    add_channel(regime);

    std::string mu_text = "0";
    auto* dtb = app.add_subcommand("dtb", "optimal delivery time per bit and all bounds");
    add_channel(dtb);
    dtb->add_option("--mu", mu_text, "fractional cache size, exact fraction p/q")->required();

    int grid = 16;
    bool corners = false;
    std::string output;
    auto* curve = app.add_subcommand("curve", "CSV tradeoff curve, optionally with corner points");
    add_channel(curve);
    curve->add_option("--grid", grid, "grid denominator")->check(CLI::Range(1, 1024));
    curve->add_flag("--corners", corners, "append exact corner points");
    curve->add_option("-o,--output", output,
                      "output file (relative paths join $LDMCACHE_OUTPUT_DIR)");

    unsigned seed = 1;
    int trials = 50;
    std::string scheme_out, transcript_out;
    auto* simulate = app.add_subcommand("simulate", "build a scheme and run it bit by bit");
    add_channel(simulate);
    simulate->add_option("--mu", mu_text, "fractional cache size, exact fraction p/q")->required();
    simulate->add_option("--seed", seed, "random file seed");
    simulate->add_option("--trials", trials, "random deliveries per demand vector")
        ->check(CLI::Range(1, 10000));
    simulate->add_option("--dump-scheme", scheme_out, "write the scheme as JSON");
    simulate->add_option("--dump-transcript", transcript_out,
                         "write one transcript (demand (1,2)) as JSON");

    std::string nd_range = "1", nr_range = "1", ns_range = "1", format = "csv";
    int sweep_grid = 16;
    auto* sweep = app.add_subcommand("sweep", "tradeoff table over channel ranges");
    sweep->add_option("--nd", nd_range, "direct link range, N or LO:HI")->required();
    sweep->add_option("--nr", nr_range, "relay link range, N or LO:HI")->required();
    sweep->add_option("--ns", ns_range, "serving link range, N or LO:HI")->required();
    sweep->add_option("--grid", sweep_grid, "cache-size grid denominator")
        ->check(CLI::Range(1, 1024));
    sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("-o,--output", output,
                      "output file (relative paths join $LDMCACHE_OUTPUT_DIR)");

    int max_n = 8, verify_grid = 16, verify_trials = 200;
    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    verify->add_option("--max", max_n, "channel cube bound")->check(CLI::Range(1, 10));
    verify->add_option("--grid", verify_grid, "cache-size grid denominator")
        ->check(CLI::Range(1, 64));
    verify->add_option("--trials", verify_trials, "zero-error samples per demand")
        ->check(CLI::Range(1, 1000));

    int lmax = 8, tmax = 2;
    auto* oracle = app.add_subcommand("oracle", "exhaustive small-scheme search");
    add_channel(oracle);
    oracle->add_option("--mu", mu_text, "fractional cache size, exact fraction p/q")->required();
    oracle->add_option("--lmax", lmax, "largest file size to try")->check(CLI::Range(1, 8));
    oracle->add_option("--tmax", tmax, "largest number of channel uses")->check(CLI::Range(1, 2));
    oracle->add_option("--dump-scheme", scheme_out, "write the found scheme as JSON");

    double h2 = 1.0, power = 1.0;
    auto* quantize = app.add_subcommand("quantize", "bits per use of a Gaussian link");
    quantize->add_option("--h2", h2, "squared channel magnitude |h|^2")->required();
    quantize->add_option("--power", power, "transmit power")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (regime->parsed()) return run_regime(ChannelTriple(nd, nr, ns));
        if (dtb->parsed()) return run_dtb(ChannelTriple(nd, nr, ns), parse_mu_or_exit(mu_text));
        if (curve->parsed()) return run_curve(ChannelTriple(nd, nr, ns), grid, corners, output);
        if (simulate->parsed())
            return run_simulate(ChannelTriple(nd, nr, ns), parse_mu_or_exit(mu_text), seed,
                                trials, scheme_out, transcript_out);
        if (sweep->parsed())
            return run_sweep(parse_range_or_exit(nd_range), parse_range_or_exit(nr_range),
                             parse_range_or_exit(ns_range), sweep_grid, format, output);
        if (verify->parsed()) return run_verify(max_n, verify_grid, verify_trials);
        if (oracle->parsed())
            return run_oracle(ChannelTriple(nd, nr, ns), parse_mu_or_exit(mu_text), lmax, tmax,
                              scheme_out);
        if (quantize->parsed()) {
            std::cout << quantize_channel(h2, power) << "\n";
            return 0;
        }
    } catch (const SearchBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
