#include <doctest.h>

#include "ldmcache/channel.hpp"

using namespace ldmcache;

TEST_CASE("quantize_channel") {
    CHECK(quantize_channel(1.0, 100.0) == 7);
    CHECK(quantize_channel(1.0, 8.0) == 3);    // exact power of two stays put
    CHECK(quantize_channel(0.001, 4.0) == 1);  // weak links clamp to one bit
    CHECK(quantize_channel(1.0, 1.0) == 1);
    CHECK(quantize_channel(2.0, 1024.0) == 11);
    CHECK_THROWS_AS(quantize_channel(0.0, 4.0), InvalidChannel);
    CHECK_THROWS_AS(quantize_channel(-1.0, 4.0), InvalidChannel);
}

TEST_CASE("classification of the worked channels") {
    auto fine = [](int nd, int nr, int ns) { return classify_regime({nd, nr, ns}).fine; };
    CHECK(fine(4, 3, 2) == Regime::R1);
    CHECK(fine(2, 4, 3) == Regime::R31);
    CHECK(fine(5, 4, 2) == Regime::R1p);
    CHECK(fine(3, 5, 2) == Regime::R2);
    CHECK(fine(1, 1, 5) == Regime::R3p);
    CHECK(fine(3, 1, 4) == Regime::R4);
    CHECK(fine(2, 4, 4) == Regime::R31);
    CHECK(fine(6, 2, 1) == Regime::R1p);
    CHECK(fine(1, 3, 3) == Regime::R32);
    CHECK(fine(1, 2, 5) == Regime::R3p);
    CHECK(fine(2, 1, 5) == Regime::R4p);

    const RegimeLabel label = classify_regime({4, 3, 2});
    CHECK(label.coarse == CoarseClass::C1);
    CHECK(label.in_i0);
    CHECK(!label.in_i1);
    CHECK(classify_regime({2, 4, 3}).in_i1);
    CHECK(to_string(Regime::R3p) == "R3'");
}

TEST_CASE("every channel gets exactly one label and some regime covers it") {
    for (int nd = 1; nd <= 10; ++nd) {
        for (int nr = 1; nr <= 10; ++nr) {
            for (int ns = 1; ns <= 10; ++ns) {
                const ChannelTriple n(nd, nr, ns);
                const RegimeLabel label = classify_regime(n);
                REQUIRE(regime_predicate(label.fine, n));
                int claims = 0;
                for (const Regime r : {Regime::R1, Regime::R1p, Regime::R2, Regime::R2p,
                                       Regime::R31, Regime::R32, Regime::R3p, Regime::R4,
                                       Regime::R4p})
                    claims += regime_predicate(r, n) ? 1 : 0;
                REQUIRE(claims >= 1);
            }
        }
    }
}

TEST_CASE("invalid channels are rejected") {
    CHECK_THROWS_AS(ChannelTriple(0, 1, 1), InvalidChannel);
    CHECK_THROWS_AS(ChannelTriple(1, -2, 1), InvalidChannel);
    CHECK_THROWS_AS(ChannelTriple(1, 1, 65), InvalidChannel);
}
