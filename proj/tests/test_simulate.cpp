#include <doctest.h>

#include <random>

#include "ldmcache/dtb.hpp"
#include "ldmcache/simulate.hpp"

using namespace ldmcache;

namespace {

std::vector<uint8_t> bits(const std::string& s) {
    std::vector<uint8_t> out;
    for (char c : s) out.push_back(c == '1' ? 1 : 0);
    return out;
}

}  // namespace

TEST_CASE("corner scheme C transcript, traced by hand") {
    const SchemePoint c = build_corner_scheme_c({2, 4, 3});
    const Files files{bits("1010"), bits("0110")};
    const Transcript tr = simulate_delivery(c.scheme, files, {0, 1});
    REQUIRE(tr.uses() == 1);
    CHECK(tr.consistent());
    // Source: UE file's uncached bit 0 on level 0, relay file's uncached
    // bit 0 on level 2. Relay: cached UE bits 1,2,3 on levels 0,1,3.
    CHECK(tr.xs[0].to_string() == "0010");
    CHECK(tr.xr[0].to_string() == "1100");
    CHECK(tr.yr[0].to_string() == "0001");
    // The UE word reads (cached1, cached2, uncached0, cached3) of its file.
    CHECK(tr.yu[0].to_string() == "1100");

    const auto decoded = decode_transcript(c.scheme, tr);
    REQUIRE(decoded);
    CHECK(decoded->rn_file == files[0]);
    CHECK(decoded->ue_file == files[1]);
}

TEST_CASE("all-zero files produce an all-zero transcript") {
    const SchemePoint c = build_corner_scheme_c({2, 4, 3});
    const Files files{bits("0000"), bits("0000")};
    const Transcript tr = simulate_delivery(c.scheme, files, {0, 1});
    for (int t = 0; t < tr.uses(); ++t) {
        CHECK(tr.xs[t].is_zero());
        CHECK(tr.xr[t].is_zero());
        CHECK(tr.yr[t].is_zero());
        CHECK(tr.yu[t].is_zero());
    }
}

TEST_CASE("cache-free transcript on a direct-dominant channel") {
    const LinearScheme s = build_scheme_mu0({4, 3, 2}, 4);
    std::mt19937 rng(5);
    const Files files = random_files(2, 4, rng);
    const Transcript tr = simulate_delivery(s, files, {0, 1});
    CHECK(tr.uses() == 2);
    CHECK(tr.consistent());
    const auto decoded = decode_transcript(s, tr);
    REQUIRE(decoded);
    CHECK(decoded->rn_file == files[0]);
    CHECK(decoded->ue_file == files[1]);
}

TEST_CASE("a silent relay starves the UE once L exceeds the direct window") {
    // Five UE bits over two uses reach the relay, but only 2*nd = 4 clean
    // positions exist at the UE.
    Placement p = make_placement(2, 5, Rational(0));
    LinearScheme scheme({2, 4, 3}, 2, 5, p);
    int next = 0;
    for (int t = 0; t < 2; ++t)
        for (int lvl = 0; lvl < 3 && next < 5; ++lvl)
            scheme.denb[t][lvl].push_back(FileBitRef{Role::UeDemand, next++});
    const VerificationReport report = check_decodability(scheme);
    CHECK(!report.decode.at({0, 1}).ue_ok);
    CHECK(!report.all_ok);
}

TEST_CASE("full cache on a relay-dominant channel reaches the floor") {
    const SchemePoint p = build_full_cache_scheme({1, 5, 1});
    const VerificationReport report = check_decodability(p.scheme);
    CHECK(report.all_ok);
    CHECK(report.achieved_dtb == Rational(1, 5));
    CHECK(report.achieved_dtb == report.lower_bound);
}

TEST_CASE("reconstruction replays the relay and rebuilds its reception") {
    std::mt19937 rng(17);
    {
        const SchemePoint c = build_corner_scheme_c({2, 4, 3});
        const Files files = random_files(2, c.scheme.file_size, rng);
        const auto result = recursive_reconstruct(c.scheme, files, {0, 1});
        CHECK(result.success);
        REQUIRE(result.reconstructed_yr.size() == 1);
    }
    {
        // Relay silent throughout: reconstruction is trivial but must agree.
        const LinearScheme s = build_scheme_mu0({2, 2, 3}, 6);
        const Files files = random_files(2, 6, rng);
        CHECK(recursive_reconstruct(s, files, {0, 1}).success);
        CHECK(recursive_reconstruct(s, files, {1, 1}).success);
    }
    {
        // Pipelined delivery with a live relay across several uses.
        const LinearScheme s = build_scheme_mu0({2, 4, 5}, 15);
        REQUIRE(s.uses >= 2);
        const Files files = random_files(2, 15, rng);
        CHECK(recursive_reconstruct(s, files, {0, 1}).success);
    }
    const LinearScheme direct = build_scheme_mu0({4, 3, 2}, 4);
    CHECK_THROWS_AS(recursive_reconstruct(direct, Files{bits("0000"), bits("0000")}, {0, 1}),
                    NotApplicable);
}

TEST_CASE("decodability rank criterion agrees with sampled behaviour") {
    const SchemePoint b = build_corner_scheme_b({2, 4, 3});
    std::mt19937 rng(23);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int trial = 0; trial < 50; ++trial) {
                const Files files = random_files(2, b.scheme.file_size, rng);
                const Transcript tr = simulate_delivery(b.scheme, files, {i, j});
                const auto decoded = decode_transcript(b.scheme, tr);
                REQUIRE(decoded);
                CHECK(decoded->rn_file == files[i]);
                CHECK(decoded->ue_file == files[j]);
            }
        }
    }
}

TEST_CASE("transcript json uses bit strings, most significant level first") {
    const SchemePoint c = build_corner_scheme_c({2, 4, 3});
    const Files files{bits("1010"), bits("0110")};
    const Transcript tr = simulate_delivery(c.scheme, files, {0, 1});
    const std::string text = tr.to_json();
    CHECK(text.find("\"x_s\":[\"0010\"]") != std::string::npos);
    CHECK(text.find("\"x_r\":[\"1100\"]") != std::string::npos);
    CHECK(text.find("\"y_r\":[\"0001\"]") != std::string::npos);
    CHECK(text.find("\"y_u\":[\"1100\"]") != std::string::npos);
}

TEST_CASE("brute force search recovers the worked points") {
    {
        const auto found = brute_force_search({2, 4, 3}, Rational(3, 4), 8, 1);
        REQUIRE(found);
        CHECK(found->dtb == Rational(1, 4));
        CHECK(found->file_size == 4);
        CHECK(check_decodability(found->scheme).all_ok);
    }
    {
        const auto found = brute_force_search({1, 1, 1}, Rational(1), 1, 1);
        REQUIRE(found);
        CHECK(found->dtb == Rational(1));
    }
    {
        const auto found = brute_force_search({2, 4, 3}, Rational(0), 8, 2);
        REQUIRE(found);
        CHECK(found->dtb == Rational(2, 3));
        CHECK(found->dtb >= dtb_lower_bound(Rational(0), {2, 4, 3}));
        CHECK(check_decodability(found->scheme).all_ok);
    }
    CHECK_THROWS_AS(brute_force_search({6, 6, 6}, Rational(0), 8, 2), SearchBudgetExceeded);
    CHECK_THROWS_AS(brute_force_search({2, 2, 2}, Rational(0), 9, 2), SearchBudgetExceeded);
}
