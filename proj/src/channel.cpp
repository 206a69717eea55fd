#include "ldmcache/channel.hpp"

#include <algorithm>
#include <cmath>

namespace ldmcache {

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::R1: return "R1";
        case Regime::R1p: return "R1'";
        case Regime::R2: return "R2";
        case Regime::R2p: return "R2'";
        case Regime::R31: return "R31";
        case Regime::R32: return "R32";
        case Regime::R3p: return "R3'";
        case Regime::R4: return "R4";
        case Regime::R4p: return "R4'";
    }
    return "?";
}

std::string_view to_string(CoarseClass c) {
    switch (c) {
        case CoarseClass::C1: return "C1";
        case CoarseClass::C2: return "C2";
        case CoarseClass::C3: return "C3";
        case CoarseClass::C4: return "C4";
    }
    return "?";
}

int quantize_channel(double h_mag_sq, double power) {
    const double x = h_mag_sq * power;
    if (!(x > 0.0) || !std::isfinite(x))
        throw InvalidChannel("quantize_channel: power * |h|^2 must be positive and finite");
    int k = static_cast<int>(std::ceil(std::log2(x)));
    // log2 can land a hair off an exact power of two; settle k by comparing
    // against exact powers.
    while (k > 0 && std::exp2(static_cast<double>(k - 1)) >= x) --k;
    while (std::exp2(static_cast<double>(k)) < x) ++k;
    return std::max(1, k);
}

namespace {

bool coarse_predicate(CoarseClass c, const ChannelTriple& n) {
    switch (c) {
        case CoarseClass::C1: return n.nd >= n.nr && n.nd >= n.ns;
        case CoarseClass::C2: return n.nr >= n.nd && n.nd >= n.ns;
        case CoarseClass::C3: return n.nr >= n.nd && n.ns >= n.nd;
        case CoarseClass::C4: return n.ns >= n.nd && n.nd >= n.nr;
    }
    return false;
}

}  // namespace

bool regime_predicate(Regime r, const ChannelTriple& n) {
    const int m = std::max(n.nd, n.nr);
    switch (r) {
        case Regime::R1: return coarse_predicate(CoarseClass::C1, n) && 2 * n.ns >= n.nd;
        case Regime::R1p: return coarse_predicate(CoarseClass::C1, n) && 2 * n.ns <= n.nd;
        case Regime::R2: return coarse_predicate(CoarseClass::C2, n) && 2 * n.ns >= n.nd;
        case Regime::R2p: return coarse_predicate(CoarseClass::C2, n) && 2 * n.ns <= n.nd;
        case Regime::R31: return coarse_predicate(CoarseClass::C3, n) && n.ns <= 2 * n.nd;
        case Regime::R32:
            return coarse_predicate(CoarseClass::C3, n) && 2 * n.nd <= n.ns && n.ns <= 2 * n.nr;
        case Regime::R3p: return coarse_predicate(CoarseClass::C3, n) && n.ns >= 2 * n.nr;
        case Regime::R4: return coarse_predicate(CoarseClass::C4, n) && 2 * m >= n.ns;
        case Regime::R4p: return coarse_predicate(CoarseClass::C4, n) && n.ns >= 2 * m;
    }
    return false;
}

RegimeLabel classify_regime(const ChannelTriple& n) {
    const int m = std::max(n.nd, n.nr);
    RegimeLabel label{};
    label.in_i0 = 2 * n.ns >= n.nd && n.nd >= n.ns;
    label.in_i1 = 2 * m >= n.ns && n.ns >= n.nd;

    // Fixed evaluation order; see header.
    if (coarse_predicate(CoarseClass::C1, n)) {
        label.coarse = CoarseClass::C1;
        label.fine = (2 * n.ns >= n.nd) ? Regime::R1 : Regime::R1p;
    } else if (coarse_predicate(CoarseClass::C2, n)) {
        label.coarse = CoarseClass::C2;
        label.fine = (2 * n.ns >= n.nd) ? Regime::R2 : Regime::R2p;
    } else if (coarse_predicate(CoarseClass::C3, n)) {
        label.coarse = CoarseClass::C3;
        if (n.ns <= 2 * n.nd)
            label.fine = Regime::R31;
        else if (n.ns <= 2 * n.nr)
            label.fine = Regime::R32;
        else
            label.fine = Regime::R3p;
    } else {
        label.coarse = CoarseClass::C4;
        label.fine = (2 * m >= n.ns) ? Regime::R4 : Regime::R4p;
    }
    return label;
}

}  // namespace ldmcache
