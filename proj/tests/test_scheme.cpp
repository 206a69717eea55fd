#include <doctest.h>

#include "ldmcache/dtb.hpp"
#include "ldmcache/scheme.hpp"
#include "ldmcache/simulate.hpp"

using namespace ldmcache;

TEST_CASE("placement caches a suffix of every file") {
    const Placement p = make_placement(2, 4, Rational(3, 4));
    CHECK(p.cached == std::vector<int>{1, 2, 3});
    CHECK(make_placement(2, 4, Rational(0)).cached.empty());
    CHECK(make_placement(2, 4, Rational(1)).cached.size() == 4);
    CHECK_THROWS_AS(make_placement(2, 3, Rational(1, 2)), IndivisibleCache);
    CHECK_THROWS_AS(make_placement(2, 4, Rational(5, 4)), InvalidCacheFraction);
}

TEST_CASE("cache-free scheme hits the exact rate where the schedule divides") {
    {
        const LinearScheme s = build_scheme_mu0({4, 3, 2}, 4);
        CHECK(s.uses == 2);
        CHECK(s.dtb() == Rational(1, 2));
        CHECK(check_decodability(s).all_ok);
    }
    {
        // Serving link is the bottleneck; the relay window is wide enough
        // that no pipelining is needed and the rate is exact.
        const LinearScheme s = build_scheme_mu0({2, 4, 3}, 3);
        CHECK(s.uses == 2);
        CHECK(s.dtb() == Rational(2, 3));
        CHECK(s.dtb() == dtb_optimal(Rational(0), {2, 4, 3}).optimal);
        CHECK(check_decodability(s).all_ok);
    }
    {
        const LinearScheme s = build_scheme_mu0({1, 1, 5}, 1);
        CHECK(s.uses == 1);
        CHECK(s.dtb() == Rational(1));
        CHECK(check_decodability(s).all_ok);
    }
}

TEST_CASE("cache-free scheme stays within two uses of the target in general") {
    for (const ChannelTriple n : {ChannelTriple{1, 2, 5}, ChannelTriple{2, 4, 5},
                                  ChannelTriple{1, 4, 8}, ChannelTriple{3, 7, 8}}) {
        const int L = 64;
        const LinearScheme s = build_scheme_mu0(n, L);
        const Rational target = dtb_optimal(Rational(0), n).optimal;
        const Rational gap = s.dtb() - target;
        CHECK(gap >= Rational(0));
        CHECK(gap <= Rational(2, L));
        CHECK(check_decodability(s).all_ok);
    }
}

TEST_CASE("corner scheme B") {
    {
        const SchemePoint b = build_corner_scheme_b({2, 4, 3});
        CHECK(b.mu == Rational(4, 7));
        CHECK(b.dtb == Rational(2, 7));
        CHECK(b.scheme.uses == 2);  // odd serving strength doubles the block
        CHECK(b.scheme.file_size == 7);
        CHECK(check_decodability(b.scheme).all_ok);
    }
    {
        const SchemePoint b = build_corner_scheme_b({2, 4, 4});
        CHECK(b.mu == Rational(1, 2));
        CHECK(b.dtb == Rational(1, 4));
        CHECK(b.scheme.uses == 1);
        CHECK(b.scheme.file_size == 4);
    }
    {
        const SchemePoint b = build_corner_scheme_b({3, 6, 4});
        CHECK(b.mu == Rational(3, 5));
        CHECK(b.dtb == Rational(1, 5));
    }
    CHECK_THROWS_AS(build_corner_scheme_b({4, 3, 2}), RegimeMismatch);
}

TEST_CASE("corner scheme C matches the level plan") {
    const SchemePoint c = build_corner_scheme_c({2, 4, 3});
    CHECK(c.mu == Rational(3, 4));
    CHECK(c.dtb == Rational(1, 4));
    CHECK(c.scheme.uses == 1);
    CHECK(c.scheme.file_size == 4);

    // Source: uncached UE bit on its top level, uncached relay bit just
    // below the UE window, one silent level between them.
    const auto& denb = c.scheme.denb[0];
    CHECK(denb[0] == DenbLevel{FileBitRef{Role::UeDemand, 0}});
    CHECK(denb[1].empty());
    CHECK(denb[2] == DenbLevel{FileBitRef{Role::RnDemand, 0}});
    CHECK(denb[3].empty());
    // Relay: the three cached UE bits on levels 0, 1 and 3.
    const auto& rn = c.scheme.rn[0];
    CHECK(rn[0] == RnLevel{RnTerm::from_cache(Role::UeDemand, 1)});
    CHECK(rn[1] == RnLevel{RnTerm::from_cache(Role::UeDemand, 2)});
    CHECK(rn[2].empty());
    CHECK(rn[3] == RnLevel{RnTerm::from_cache(Role::UeDemand, 3)});

    CHECK(build_corner_scheme_c({2, 4, 4}).mu == Rational(1, 2));
    CHECK(build_corner_scheme_c({2, 4, 4}).dtb == Rational(1, 4));
    CHECK(build_corner_scheme_c({3, 5, 4}).mu == Rational(4, 5));
    CHECK(build_corner_scheme_c({3, 5, 4}).dtb == Rational(1, 5));
    CHECK_THROWS_AS(build_corner_scheme_c({4, 3, 2}), RegimeMismatch);
}

TEST_CASE("time sharing lands exactly on the optimal curve") {
    const ChannelTriple n{2, 4, 3};
    const SchemePoint b = build_corner_scheme_b(n);
    const SchemePoint c = build_corner_scheme_c(n);
    {
        const SchemePoint mid = time_share(b, c, Rational(3, 5));
        CHECK(mid.mu == Rational(3, 5));
        CHECK(mid.dtb == Rational(7, 25));
        CHECK(mid.dtb == dtb_optimal(Rational(3, 5), n).optimal);
        CHECK(check_decodability(mid.scheme).all_ok);
    }
    {
        const SchemePoint same = time_share(b, c, b.mu);
        CHECK(same.mu == b.mu);
        CHECK(same.dtb == b.dtb);
    }
    {
        const SchemePoint a = *scheme_for(Rational(0), n);
        CHECK(a.dtb == Rational(2, 3));
        const SchemePoint mid = time_share(a, b, Rational(2, 7));
        CHECK(mid.dtb == Rational(10, 21));
        CHECK(mid.dtb == dtb_optimal(Rational(2, 7), n).optimal);
    }
    CHECK_THROWS_AS(time_share(b, c, Rational(9, 10)), InterpolationRange);
    CHECK_THROWS_AS(time_share(b, c, Rational(1, 10)), InterpolationRange);
}

TEST_CASE("scheme dispatch") {
    const auto shared = scheme_for(Rational(3, 5), {2, 4, 3});
    REQUIRE(shared);
    CHECK(shared->dtb == Rational(7, 25));

    const auto full = scheme_for(Rational(1), {4, 3, 2});
    REQUIRE(full);
    CHECK(full->dtb == Rational(1, 4));

    CHECK(!scheme_for(Rational(1, 2), {3, 1, 4}));  // no construction there
    CHECK_THROWS_AS(scheme_for(Rational(3, 2), {2, 4, 3}), InvalidCacheFraction);
}

TEST_CASE("full cache scheme achieves the latency floor") {
    for (const ChannelTriple n : {ChannelTriple{1, 5, 1}, ChannelTriple{4, 3, 2},
                                  ChannelTriple{2, 4, 3}}) {
        const SchemePoint p = build_full_cache_scheme(n);
        CHECK(p.mu == Rational(1));
        CHECK(p.dtb == Rational(1, std::max(n.nd, n.nr)));
        CHECK(check_decodability(p.scheme).all_ok);
    }
}

TEST_CASE("scheme json round-trip") {
    const SchemePoint c = build_corner_scheme_c({2, 4, 3});
    const std::string text = c.scheme.to_json();
    CHECK(text.find("\"T\":1") != std::string::npos);
    CHECK(text.find("\"L\":4") != std::string::npos);
    CHECK(text.find("\"cached\":[1,2,3]") != std::string::npos);

    const LinearScheme parsed = LinearScheme::from_json(text);
    CHECK(parsed.uses == c.scheme.uses);
    CHECK(parsed.file_size == c.scheme.file_size);
    CHECK(parsed.placement.cached == c.scheme.placement.cached);
    CHECK(parsed.denb == c.scheme.denb);
    CHECK(parsed.rn == c.scheme.rn);

    // A pipelined scheme exercises the received-level terms too.
    const LinearScheme piped = build_scheme_mu0({2, 4, 5}, 15);
    const LinearScheme piped_back = LinearScheme::from_json(piped.to_json());
    CHECK(piped_back.rn == piped.rn);
    CHECK(piped_back.denb == piped.denb);
}

TEST_CASE("relay causality is enforced structurally") {
    Placement p = make_placement(2, 2, Rational(0));
    LinearScheme scheme({2, 4, 3}, 1, 2, p);
    scheme.denb[0][0].push_back(FileBitRef{Role::RnDemand, 0});
    scheme.rn[0][0].push_back(RnTerm::from_received(0, 1));  // same use: illegal
    CHECK_THROWS_AS(scheme.validate(), CausalityError);
}
