#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "ldmcache/channel.hpp"
#include "ldmcache/rational.hpp"

namespace ldmcache {

enum class BoundId { B1, B2, B3, B4, B5 };

std::string_view to_string(BoundId id);

/// One converse bound on the delivery time per bit. B4 applies only when
/// nd >= ns, B5 only when ns >= nd; B1-B3 always apply.
struct BoundValue {
    BoundId id;
    Rational value;
    bool applicable;
};

/// Full answer for one (mu, channel) query: the regime, the optimal delivery
/// time per bit from the regime-cased closed form, the five converse bounds,
/// and which applicable bounds attain the maximum.
struct DtbReport {
    RegimeLabel regime;
    Rational mu;
    Rational optimal;
    std::array<BoundValue, 5> bounds;
    std::vector<BoundId> active;
};

/// The five genie-style lower bounds on delivery time per bit, evaluated
/// exactly at fractional cache size mu.
std::array<BoundValue, 5> converse_bounds(const Rational& mu, const ChannelTriple& n);

/// Maximum of the applicable converse bounds.
Rational dtb_lower_bound(const Rational& mu, const ChannelTriple& n);

/// An affine function of mu, value(mu) = intercept + slope * mu. Every
/// regime's optimal latency is the upper envelope of a handful of these.
struct AffinePiece {
    Rational intercept;
    Rational slope;
    Rational at(const Rational& mu) const { return intercept + slope * mu; }
    friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

/// The affine pieces whose maximum is the optimal delivery time per bit in
/// regime `r`.
std::vector<AffinePiece> regime_pieces(Regime r, const ChannelTriple& n);

/// Evaluates the regime-cased closed form. Kept independent of
/// dtb_lower_bound so agreement between the two is a genuine cross-check.
Rational regime_formula(Regime r, const Rational& mu, const ChannelTriple& n);

/// Optimal delivery time per bit with the full bound breakdown.
DtbReport dtb_optimal(const Rational& mu, const ChannelTriple& n);

/// Breakpoints of the upper envelope of `pieces` on [lo, hi]: exact
/// (x, value) pairs starting at lo and ending at hi, with interior points
/// exactly where the envelope's slope changes.
std::vector<std::pair<Rational, Rational>> upper_envelope(const std::vector<AffinePiece>& pieces,
                                                          const Rational& lo, const Rational& hi);

/// Exact corner points of mu -> optimal delivery time per bit on [0, 1]:
/// strictly increasing in mu, non-increasing in value.
std::vector<std::pair<Rational, Rational>> corner_points(const ChannelTriple& n);

/// Samples the optimal curve at mu = k / grid_denominator, k = 0..grid_denominator.
std::vector<std::pair<Rational, Rational>> dtb_curve(const ChannelTriple& n, int grid_denominator);

}  // namespace ldmcache
