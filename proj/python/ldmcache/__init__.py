"""Exact latency analytics and bit-level delivery simulation for a
cache-aided relay network over the binary deterministic channel."""

from ldmcache._core import (
    BoundValue,
    ChannelTriple,
    CheckResult,
    DecodedFiles,
    DemandResult,
    DtbReport,
    LinearScheme,
    Placement,
    Rational,
    ReconstructionResult,
    RegimeLabel,
    SchemePoint,
    SearchResult,
    Transcript,
    VerificationReport,
    __version__,
    brute_force_search,
    build_corner_scheme_b,
    build_corner_scheme_c,
    build_full_cache_scheme,
    build_scheme_mu0,
    check_decodability,
    classify_regime,
    converse_bounds,
    corner_points,
    decode_transcript,
    downshift,
    dtb_curve,
    dtb_lower_bound,
    dtb_optimal,
    make_placement,
    quantize_channel,
    recursive_reconstruct,
    run_invariant_suite,
    scheme_for,
    simulate_delivery,
    solve_gf2,
    superpose,
    time_share,
)

__all__ = [
    "BoundValue",
    "ChannelTriple",
    "CheckResult",
    "DecodedFiles",
    "DemandResult",
    "DtbReport",
    "LinearScheme",
    "Placement",
    "Rational",
    "ReconstructionResult",
    "RegimeLabel",
    "SchemePoint",
    "SearchResult",
    "Transcript",
    "VerificationReport",
    "__version__",
    "brute_force_search",
    "build_corner_scheme_b",
    "build_corner_scheme_c",
    "build_full_cache_scheme",
    "build_scheme_mu0",
    "check_decodability",
    "classify_regime",
    "converse_bounds",
    "corner_points",
    "decode_transcript",
    "downshift",
    "dtb_curve",
    "dtb_lower_bound",
    "dtb_optimal",
    "make_placement",
    "quantize_channel",
    "recursive_reconstruct",
    "run_invariant_suite",
    "scheme_for",
    "simulate_delivery",
    "solve_gf2",
    "superpose",
    "time_share",
]
