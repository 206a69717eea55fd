#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "ldmcache/errors.hpp"

namespace ldmcache {

/// Integer link strengths of the deterministic network: bits per channel use
/// on the direct link (DeNB to UE), the relay link (RN to UE) and the serving
/// link (DeNB to RN).
struct ChannelTriple {
    int nd;
    int nr;
    int ns;

    ChannelTriple(int nd_, int nr_, int ns_) : nd(nd_), nr(nr_), ns(ns_) {
        if (nd < 1 || nr < 1 || ns < 1)
            throw InvalidChannel("ChannelTriple: strengths must be positive integers");
        if (nd > 64 || nr > 64 || ns > 64)
            throw InvalidChannel("ChannelTriple: strengths above 64 are not supported");
    }

    /// Word size q shared by every signal on this channel.
    int word_size() const { return nd > nr ? (nd > ns ? nd : ns) : (nr > ns ? nr : ns); }

    friend auto operator<=>(const ChannelTriple&, const ChannelTriple&) = default;

    std::string str() const {
        return "(" + std::to_string(nd) + "," + std::to_string(nr) + "," + std::to_string(ns) + ")";
    }
};

enum class CoarseClass { C1, C2, C3, C4 };

enum class Regime { R1, R1p, R2, R2p, R31, R32, R3p, R4, R4p };

/// Classification of one channel: the fine regime that selects the optimal
/// latency formula, the coarse class it came from, and membership in the two
/// balance sets I0 = {2ns >= nd >= ns} and I1 = {2 max(nd,nr) >= ns >= nd}.
struct RegimeLabel {
    Regime fine;
    CoarseClass coarse;
    bool in_i0;
    bool in_i1;
};

std::string_view to_string(Regime r);
std::string_view to_string(CoarseClass c);

/// Number of bits per channel use a Gaussian link of receive power
/// `power * h_mag_sq` supports: max(1, ceil(log2(power * h_mag_sq))).
int quantize_channel(double h_mag_sq, double power);

/// Total classification. Overlapping non-strict predicates are resolved in
/// the fixed order C1, C2, C3, C4 and, inside C3, R31, R32, R3'. Boundary
/// channels satisfy several predicates, but the latency formulas of adjacent
/// regimes agree there, so the tie-break is observable only in the label.
RegimeLabel classify_regime(const ChannelTriple& n);

/// Non-strict membership test for a single regime, used to enumerate
/// boundary channels where several regimes claim the same triple.
bool regime_predicate(Regime r, const ChannelTriple& n);

}  // namespace ldmcache
