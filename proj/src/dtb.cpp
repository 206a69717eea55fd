#include "ldmcache/dtb.hpp"

#include <algorithm>

namespace ldmcache {

std::string_view to_string(BoundId id) {
    switch (id) {
        case BoundId::B1: return "B1";
        case BoundId::B2: return "B2";
        case BoundId::B3: return "B3";
        case BoundId::B4: return "B4";
        case BoundId::B5: return "B5";
    }
    return "?";
}

namespace {

void require_cache_fraction(const Rational& mu) {
    if (mu < Rational(0) || mu > Rational(1))
        throw InvalidCacheFraction("mu must lie in [0, 1], got " + mu.str());
}

int relay_surplus(const ChannelTriple& n) { return n.nr > n.nd ? n.nr - n.nd : 0; }

}  // namespace

std::array<BoundValue, 5> converse_bounds(const Rational& mu, const ChannelTriple& n) {
    require_cache_fraction(mu);
    const Rational one(1), two(2);
    const int m = std::max(n.nd, n.nr);
    std::array<BoundValue, 5> out{{
        {BoundId::B1, (one - mu) / Rational(n.ns), true},
        {BoundId::B2, one / Rational(m), true},
        {BoundId::B3, (two - Rational(2) * mu) / Rational(std::max(n.nd, n.ns)), true},
        {BoundId::B4, (two - mu) / Rational(m), n.nd >= n.ns},
        {BoundId::B5, (two - mu) / Rational(n.ns + relay_surplus(n)), n.ns >= n.nd},
    }};
    return out;
}

Rational dtb_lower_bound(const Rational& mu, const ChannelTriple& n) {
    const auto bounds = converse_bounds(mu, n);
    Rational best(0);
    for (const auto& b : bounds)
        if (b.applicable && b.value > best) best = b.value;
    return best;
}

std::vector<AffinePiece> regime_pieces(Regime r, const ChannelTriple& n) {
    const int m = std::max(n.nd, n.nr);
    const Rational lb(1, m);  // latency floor with the relay as a second transmitter
    auto over = [](long long num0, long long num_mu, int den) {
        return AffinePiece{Rational(num0, den), Rational(num_mu, den)};
    };
    switch (r) {
        case Regime::R1: return {over(2, -1, n.nd)};
        case Regime::R2: return {over(2, -2, n.nd), over(2, -1, n.nr)};
        case Regime::R1p:
        case Regime::R2p: return {over(1, -1, n.ns), over(2, -1, m)};
        case Regime::R31:
            return {over(2, -2, n.ns), over(2, -1, n.ns + relay_surplus(n)),
                    AffinePiece{lb, Rational(0)}};
        case Regime::R32: return {over(2, -2, n.ns), AffinePiece{lb, Rational(0)}};
        case Regime::R4:
            return {over(2, -1, n.ns + relay_surplus(n)), AffinePiece{lb, Rational(0)}};
        case Regime::R3p:
        case Regime::R4p: return {AffinePiece{lb, Rational(0)}};
    }
    return {};
}

Rational regime_formula(Regime r, const Rational& mu, const ChannelTriple& n) {
    require_cache_fraction(mu);
    const auto pieces = regime_pieces(r, n);
    Rational best = pieces.front().at(mu);
    for (std::size_t i = 1; i < pieces.size(); ++i) best = std::max(best, pieces[i].at(mu));
    return best;
}

DtbReport dtb_optimal(const Rational& mu, const ChannelTriple& n) {
    require_cache_fraction(mu);
    DtbReport report;
    report.regime = classify_regime(n);
    report.mu = mu;
    report.optimal = regime_formula(report.regime.fine, mu, n);
    report.bounds = converse_bounds(mu, n);
    const Rational lb = dtb_lower_bound(mu, n);
    for (const auto& b : report.bounds)
        if (b.applicable && b.value == lb) report.active.push_back(b.id);
    return report;
}

std::vector<std::pair<Rational, Rational>> upper_envelope(const std::vector<AffinePiece>& pieces,
                                                          const Rational& lo, const Rational& hi) {
    if (pieces.empty() || !(lo < hi))
        throw std::invalid_argument("upper_envelope: need pieces and lo < hi");
    auto value_at = [&](const Rational& x) {
        Rational best = pieces.front().at(x);
        for (std::size_t i = 1; i < pieces.size(); ++i) best = std::max(best, pieces[i].at(x));
        return best;
    };

    std::vector<Rational> candidates{lo, hi};
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            if (pieces[i].slope == pieces[j].slope) continue;
            const Rational x = (pieces[j].intercept - pieces[i].intercept) /
                               (pieces[i].slope - pieces[j].slope);
            if (lo < x && x < hi) candidates.push_back(x);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // The envelope is affine between consecutive candidates; keep only the
    // points where its slope actually changes.
    std::vector<Rational> values;
    values.reserve(candidates.size());
    for (const auto& x : candidates) values.push_back(value_at(x));

    std::vector<std::pair<Rational, Rational>> out;
    out.emplace_back(candidates.front(), values.front());
    for (std::size_t i = 1; i + 1 < candidates.size(); ++i) {
        const Rational left = (values[i] - values[i - 1]) / (candidates[i] - candidates[i - 1]);
        const Rational right = (values[i + 1] - values[i]) / (candidates[i + 1] - candidates[i]);
        if (!(left == right)) out.emplace_back(candidates[i], values[i]);
    }
    out.emplace_back(candidates.back(), values.back());
    return out;
}

std::vector<std::pair<Rational, Rational>> corner_points(const ChannelTriple& n) {
    const Regime r = classify_regime(n).fine;
    return upper_envelope(regime_pieces(r, n), Rational(0), Rational(1));
}

std::vector<std::pair<Rational, Rational>> dtb_curve(const ChannelTriple& n,
                                                     int grid_denominator) {
    if (grid_denominator < 1)
        throw std::invalid_argument("dtb_curve: grid denominator must be >= 1");
    std::vector<std::pair<Rational, Rational>> out;
    out.reserve(grid_denominator + 1);
    for (int k = 0; k <= grid_denominator; ++k) {
        const Rational mu(k, grid_denominator);
        out.emplace_back(mu, dtb_optimal(mu, n).optimal);
    }
    return out;
}

}  // namespace ldmcache
