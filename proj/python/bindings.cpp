#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "ldmcache/dtb.hpp"
#include "ldmcache/simulate.hpp"
#include "ldmcache/verify.hpp"

namespace py = pybind11;
using namespace ldmcache;

namespace {

std::string regime_name(Regime r) { return std::string(to_string(r)); }

std::vector<std::string> word_strings(const std::vector<LevelWord>& words) {
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(w.to_string());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact cache-aided relay latency analytics over the binary deterministic channel";

    py::class_<Rational>(m, "Rational")
        .def(py::init<long long, long long>(), py::arg("num"), py::arg("den") = 1)
        .def_static("parse",
                    [](const std::string& text) {
                        const auto r = Rational::parse(text);
                        if (!r) throw py::value_error("not an exact fraction: " + text);
                        return *r;
                    })
        .def_property_readonly("num", &Rational::num)
        .def_property_readonly("den", &Rational::den)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def(py::self == py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def(py::self > py::self)
        .def(py::self >= py::self)
        .def("__str__", &Rational::str)
        .def("__repr__", [](const Rational& r) { return "Rational(" + r.str() + ")"; })
        .def("__hash__", [](const Rational& r) {
            return py::hash(py::make_tuple(r.num(), r.den()));
        });

    py::class_<ChannelTriple>(m, "ChannelTriple")
        .def(py::init<int, int, int>(), py::arg("nd"), py::arg("nr"), py::arg("ns"))
        .def_readonly("nd", &ChannelTriple::nd)
        .def_readonly("nr", &ChannelTriple::nr)
        .def_readonly("ns", &ChannelTriple::ns)
        .def_property_readonly("word_size", &ChannelTriple::word_size)
        .def(py::self == py::self)
        .def("__repr__", [](const ChannelTriple& n) { return "ChannelTriple" + n.str(); });

    py::class_<RegimeLabel>(m, "RegimeLabel")
        .def_property_readonly("fine", [](const RegimeLabel& l) { return regime_name(l.fine); })
        .def_property_readonly("coarse",
                               [](const RegimeLabel& l) { return std::string(to_string(l.coarse)); })
        .def_readonly("in_i0", &RegimeLabel::in_i0)
        .def_readonly("in_i1", &RegimeLabel::in_i1)
        .def("__repr__", [](const RegimeLabel& l) {
            return "RegimeLabel(" + regime_name(l.fine) + ")";
        });

    py::class_<BoundValue>(m, "BoundValue")
        .def_property_readonly("id",
                               [](const BoundValue& b) { return std::string(to_string(b.id)); })
        .def_readonly("value", &BoundValue::value)
        .def_readonly("applicable", &BoundValue::applicable);

    py::class_<DtbReport>(m, "DtbReport")
        .def_readonly("regime", &DtbReport::regime)
        .def_readonly("mu", &DtbReport::mu)
        .def_readonly("optimal", &DtbReport::optimal)
        .def_property_readonly("bounds",
                               [](const DtbReport& r) {
                                   return std::vector<BoundValue>(r.bounds.begin(),
                                                                  r.bounds.end());
                               })
        .def_property_readonly("active", [](const DtbReport& r) {
            std::vector<std::string> out;
            for (const BoundId id : r.active) out.emplace_back(to_string(id));
            return out;
        });

    py::class_<Placement>(m, "Placement")
        .def_readonly("file_count", &Placement::file_count)
        .def_readonly("file_size", &Placement::file_size)
        .def_readonly("cached", &Placement::cached);

    py::class_<LinearScheme>(m, "LinearScheme")
        .def_readonly("n", &LinearScheme::n)
        .def_readonly("uses", &LinearScheme::uses)
        .def_readonly("file_size", &LinearScheme::file_size)
        .def_readonly("placement", &LinearScheme::placement)
        .def_property_readonly("word_size", &LinearScheme::word_size)
        .def_property_readonly("mu", &LinearScheme::mu)
        .def_property_readonly("dtb", &LinearScheme::dtb)
        .def("validate", &LinearScheme::validate)
        .def("to_json", &LinearScheme::to_json, py::arg("indent") = -1)
        .def_static("from_json", &LinearScheme::from_json);

    py::class_<SchemePoint>(m, "SchemePoint")
        .def_readonly("mu", &SchemePoint::mu)
        .def_readonly("dtb", &SchemePoint::dtb)
        .def_readonly("scheme", &SchemePoint::scheme);

    py::class_<Transcript>(m, "Transcript")
        .def_readonly("n", &Transcript::n)
        .def_readonly("demand", &Transcript::demand)
        .def_readonly("files", &Transcript::files)
        .def_property_readonly("uses", &Transcript::uses)
        .def_property_readonly("x_s", [](const Transcript& t) { return word_strings(t.xs); })
        .def_property_readonly("x_r", [](const Transcript& t) { return word_strings(t.xr); })
        .def_property_readonly("y_r", [](const Transcript& t) { return word_strings(t.yr); })
        .def_property_readonly("y_u", [](const Transcript& t) { return word_strings(t.yu); })
        .def("consistent", &Transcript::consistent)
        .def("to_json", &Transcript::to_json, py::arg("indent") = -1);

    py::class_<DemandResult>(m, "DemandResult")
        .def_readonly("rn_ok", &DemandResult::rn_ok)
        .def_readonly("ue_ok", &DemandResult::ue_ok);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("decode", &VerificationReport::decode)
        .def_readonly("all_ok", &VerificationReport::all_ok)
        .def_readonly("achieved_dtb", &VerificationReport::achieved_dtb)
        .def_readonly("lower_bound", &VerificationReport::lower_bound)
        .def_readonly("optimal", &VerificationReport::optimal)
        .def_readonly("recursion_ok", &VerificationReport::recursion_ok);

    py::class_<DecodedFiles>(m, "DecodedFiles")
        .def_readonly("rn_file", &DecodedFiles::rn_file)
        .def_readonly("ue_file", &DecodedFiles::ue_file);

    py::class_<ReconstructionResult>(m, "ReconstructionResult")
        .def_readonly("success", &ReconstructionResult::success)
        .def_property_readonly("y_r", [](const ReconstructionResult& r) {
            return word_strings(r.reconstructed_yr);
        });

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("file_size", &SearchResult::file_size)
        .def_readonly("uses", &SearchResult::uses)
        .def_readonly("dtb", &SearchResult::dtb)
        .def_readonly("scheme", &SearchResult::scheme);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("pass_", &CheckResult::pass)
        .def_readonly("detail", &CheckResult::detail);

    m.def("quantize_channel", &quantize_channel, py::arg("h_mag_sq"), py::arg("power"));
    m.def("classify_regime", &classify_regime, py::arg("n"));
    m.def("converse_bounds",
          [](const Rational& mu, const ChannelTriple& n) {
              const auto bounds = converse_bounds(mu, n);
              return std::vector<BoundValue>(bounds.begin(), bounds.end());
          },
          py::arg("mu"), py::arg("n"));
    m.def("dtb_lower_bound", &dtb_lower_bound, py::arg("mu"), py::arg("n"));
    m.def("dtb_optimal", &dtb_optimal, py::arg("mu"), py::arg("n"));
    m.def("corner_points", &corner_points, py::arg("n"));
    m.def("dtb_curve", &dtb_curve, py::arg("n"), py::arg("grid_denominator"));

    m.def("make_placement", &make_placement, py::arg("file_count"), py::arg("file_size"),
          py::arg("mu"));
    m.def("build_scheme_mu0", &build_scheme_mu0, py::arg("n"), py::arg("file_size"));
    m.def("build_corner_scheme_b", &build_corner_scheme_b, py::arg("n"));
    m.def("build_corner_scheme_c", &build_corner_scheme_c, py::arg("n"));
    m.def("build_full_cache_scheme", &build_full_cache_scheme, py::arg("n"));
    m.def("time_share", &time_share, py::arg("p1"), py::arg("p2"), py::arg("mu"));
    m.def("scheme_for", &scheme_for, py::arg("mu"), py::arg("n"));

    m.def("simulate_delivery", &simulate_delivery, py::arg("scheme"), py::arg("files"),
          py::arg("demand"));
    m.def("check_decodability", &check_decodability, py::arg("scheme"),
          py::arg("file_count") = 2);
    m.def("decode_transcript", &decode_transcript, py::arg("scheme"), py::arg("transcript"));
    m.def("recursive_reconstruct", &recursive_reconstruct, py::arg("scheme"), py::arg("files"),
          py::arg("demand"));
    m.def("brute_force_search", &brute_force_search, py::arg("n"), py::arg("mu"),
          py::arg("max_file_size") = 8, py::arg("max_uses") = 2);

    m.def("downshift",
          [](const std::string& word, int strength) {
              return downshift(LevelWord::from_string(word), strength).to_string();
          },
          py::arg("word"), py::arg("strength"));
    m.def("superpose",
          [](const std::string& a, const std::string& b) {
              return superpose(LevelWord::from_string(a), LevelWord::from_string(b)).to_string();
          },
          py::arg("a"), py::arg("b"));
    m.def("solve_gf2",
          [](const std::vector<std::vector<int>>& rows, const std::vector<uint8_t>& rhs)
              -> std::optional<std::vector<uint8_t>> {
              if (rows.empty() || rows.front().empty())
                  throw py::value_error("solve_gf2: empty system");
              Gf2Matrix a(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
              for (int r = 0; r < a.rows(); ++r) {
                  if (static_cast<int>(rows[r].size()) != a.cols())
                      throw py::value_error("solve_gf2: ragged matrix");
                  for (int c = 0; c < a.cols(); ++c) a.set(r, c, rows[r][c] != 0);
              }
              return solve_gf2(a, rhs);
          },
          py::arg("matrix"), py::arg("rhs"));

    m.def("run_invariant_suite",
          [](int max_n, int grid, int trials) {
              VerifyOptions options;
              options.max_n = max_n;
              options.grid = grid;
              options.zero_error_trials = trials;
              return run_invariant_suite(options);
          },
          py::arg("max_n") = 8, py::arg("grid") = 16, py::arg("trials") = 200);

    m.attr("__version__") = "0.1.0";
}
