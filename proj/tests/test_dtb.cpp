#include <doctest.h>

#include "ldmcache/dtb.hpp"
#include "ldmcache/verify.hpp"

using namespace ldmcache;

namespace {

Rational bound_value(const std::array<BoundValue, 5>& bounds, BoundId id) {
    for (const auto& b : bounds)
        if (b.id == id) return b.value;
    return Rational(-1);
}

bool bound_applicable(const std::array<BoundValue, 5>& bounds, BoundId id) {
    for (const auto& b : bounds)
        if (b.id == id) return b.applicable;
    return false;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(Rational(6, 8) == Rational(3, 4));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK(Rational(7, 25).str() == "7/25");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("1") == Rational(1));
    CHECK(!Rational::parse("0.5"));
    CHECK(!Rational::parse("1/0"));
    CHECK(!Rational::parse("a/4"));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("converse bounds on the worked channels") {
    {
        const auto bounds = converse_bounds(Rational(1, 2), {4, 3, 2});
        CHECK(bound_value(bounds, BoundId::B1) == Rational(1, 4));
        CHECK(bound_value(bounds, BoundId::B2) == Rational(1, 4));
        CHECK(bound_value(bounds, BoundId::B3) == Rational(1, 4));
        CHECK(bound_value(bounds, BoundId::B4) == Rational(3, 8));
        CHECK(bound_applicable(bounds, BoundId::B4));
        CHECK(!bound_applicable(bounds, BoundId::B5));
        CHECK(dtb_lower_bound(Rational(1, 2), {4, 3, 2}) == Rational(3, 8));
    }
    {
        const auto bounds = converse_bounds(Rational(4, 7), {2, 4, 3});
        CHECK(bound_value(bounds, BoundId::B1) == Rational(1, 7));
        CHECK(bound_value(bounds, BoundId::B2) == Rational(1, 4));
        CHECK(bound_value(bounds, BoundId::B3) == Rational(2, 7));
        CHECK(!bound_applicable(bounds, BoundId::B4));
        CHECK(bound_applicable(bounds, BoundId::B5));
        CHECK(bound_value(bounds, BoundId::B5) == Rational(2, 7));
        CHECK(dtb_lower_bound(Rational(4, 7), {2, 4, 3}) == Rational(2, 7));
    }
    {
        // Full cache: only the cooperation bounds stay positive.
        const auto bounds = converse_bounds(Rational(1), {5, 3, 4});
        CHECK(bound_value(bounds, BoundId::B1) == Rational(0));
        CHECK(bound_value(bounds, BoundId::B3) == Rational(0));
        CHECK(bound_value(bounds, BoundId::B2) == Rational(1, 5));
        CHECK(bound_value(bounds, BoundId::B4) == Rational(1, 5));
    }
    CHECK(dtb_lower_bound(Rational(0), {1, 1, 5}) == Rational(1));
    CHECK_THROWS_AS(converse_bounds(Rational(3, 2), {1, 1, 1}), InvalidCacheFraction);
    CHECK_THROWS_AS(converse_bounds(Rational(-1, 2), {1, 1, 1}), InvalidCacheFraction);
}

TEST_CASE("optimal delivery time per bit on the worked channels") {
    CHECK(dtb_optimal(Rational(1, 2), {4, 3, 2}).optimal == Rational(3, 8));
    CHECK(dtb_optimal(Rational(3, 4), {2, 4, 3}).optimal == Rational(1, 4));
    CHECK(dtb_optimal(Rational(0), {2, 4, 3}).optimal == Rational(2, 3));

    const DtbReport report = dtb_optimal(Rational(3, 4), {2, 4, 3});
    CHECK(report.regime.fine == Regime::R31);
    CHECK(report.active == std::vector<BoundId>{BoundId::B2, BoundId::B5});
}

TEST_CASE("corner points of the worked channels") {
    using Pt = std::pair<Rational, Rational>;
    const auto r31 = corner_points({2, 4, 3});
    CHECK(r31 == std::vector<Pt>{{Rational(0), Rational(2, 3)},
                                 {Rational(4, 7), Rational(2, 7)},
                                 {Rational(3, 4), Rational(1, 4)},
                                 {Rational(1), Rational(1, 4)}});
    const auto flat = corner_points({1, 1, 5});
    CHECK(flat == std::vector<Pt>{{Rational(0), Rational(1)}, {Rational(1), Rational(1)}});
    const auto single = corner_points({4, 3, 2});
    CHECK(single == std::vector<Pt>{{Rational(0), Rational(1, 2)}, {Rational(1), Rational(1, 4)}});
}

TEST_CASE("curve sampling") {
    using Pt = std::pair<Rational, Rational>;
    const auto curve = dtb_curve({2, 4, 3}, 4);
    CHECK(curve == std::vector<Pt>{{Rational(0), Rational(2, 3)},
                                   {Rational(1, 4), Rational(1, 2)},
                                   {Rational(1, 2), Rational(1, 3)},
                                   {Rational(3, 4), Rational(1, 4)},
                                   {Rational(1), Rational(1, 4)}});
    const auto pair = dtb_curve({4, 3, 2}, 2);
    CHECK(pair == std::vector<Pt>{{Rational(0), Rational(1, 2)},
                                  {Rational(1, 2), Rational(3, 8)},
                                  {Rational(1), Rational(1, 4)}});
    CHECK(dtb_curve({4, 3, 2}, 1).size() == 2);
}

TEST_CASE("analytic invariants on a small cube") {
    CHECK(check_tightness(5, 16).pass);
    CHECK(check_endpoints(5).pass);
    CHECK(check_convexity(5, 16).pass);
    CHECK(check_monotonicity(5, 16).pass);
    CHECK(check_boundary_consistency(5, 8).pass);
    CHECK(check_corner_points(5, 16).pass);
}
