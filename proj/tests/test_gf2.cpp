#include <doctest.h>

#include <random>

#include "ldmcache/gf2.hpp"

using namespace ldmcache;

TEST_CASE("downshift keeps the top levels at the bottom positions") {
    const LevelWord x = LevelWord::from_string("1011");
    CHECK(downshift(x, 3).to_string() == "0101");
    CHECK(downshift(x, 4).to_string() == "1011");
    CHECK(downshift(LevelWord::from_string("11"), 0).to_string() == "00");
    CHECK_THROWS_AS(downshift(x, 5), InvalidShift);
    CHECK_THROWS_AS(downshift(x, -1), InvalidShift);
}

TEST_CASE("superpose is elementwise xor") {
    const LevelWord a = LevelWord::from_string("101");
    const LevelWord b = LevelWord::from_string("001");
    CHECK(superpose(a, b).to_string() == "100");
    CHECK(superpose(a, a).is_zero());
    CHECK(superpose(a, LevelWord(3)) == a);
    CHECK_THROWS_AS(superpose(a, LevelWord(4)), DimensionError);
}

TEST_CASE("downshift equals multiplication by the shift matrix power") {
    for (int q = 1; q <= 8; ++q) {
        // Independent route: S^(q-n) assembled by repeated multiplication.
        Gf2Matrix shift(q, q);
        for (int i = 0; i + 1 < q; ++i) shift.set(i + 1, i, true);
        for (int n = 0; n <= q; ++n) {
            Gf2Matrix power = Gf2Matrix::identity(q);
            for (int k = 0; k < q - n; ++k) power = shift.multiplied(power);
            CHECK(power == Gf2Matrix::shift_power(q, n));
            for (uint64_t v = 0; v < (uint64_t{1} << q); ++v) {
                LevelWord x(q);
                for (int i = 0; i < q; ++i) x.set(i, (v >> i) & 1);
                CHECK(downshift(x, n) == power.apply(x));
            }
        }
    }
}

TEST_CASE("shift composition collapses to a single shift") {
    for (int q = 1; q <= 6; ++q) {
        for (int n = 0; n <= q; ++n) {
            for (int m = 0; m <= q; ++m) {
                const int combined = std::max(0, n + m - q);
                for (uint64_t v = 0; v < (uint64_t{1} << q); ++v) {
                    LevelWord x(q);
                    for (int i = 0; i < q; ++i) x.set(i, (v >> i) & 1);
                    CHECK(downshift(downshift(x, n), m) == downshift(x, combined));
                }
            }
        }
    }
}

TEST_CASE("solve_gf2 on the worked systems") {
    const Gf2Matrix id3 = Gf2Matrix::identity(3);
    CHECK(solve_gf2(id3, {1, 0, 1}) == std::vector<uint8_t>{1, 0, 1});

    Gf2Matrix ones(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) ones.set(r, c, true);
    int rank = -1;
    CHECK(!solve_gf2(ones, {1, 0}, &rank));
    CHECK(rank == 1);

    Gf2Matrix upper(2, 2);
    upper.set(0, 0, true);
    upper.set(0, 1, true);
    upper.set(1, 1, true);
    CHECK(solve_gf2(upper, {1, 1}) == std::vector<uint8_t>{0, 1});

    CHECK_THROWS_AS(solve_gf2(id3, {1, 0}), DimensionError);
}

TEST_CASE("solve_gf2 round-trips every input of random full-column-rank maps") {
    std::mt19937 rng(99);
    int built = 0;
    while (built < 25) {
        const int cols = 1 + static_cast<int>(rng() % 12);
        const int rows = cols + static_cast<int>(rng() % 4);
        Gf2Matrix a(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) a.set(r, c, rng() & 1);
        if (LinearSystem(a).rank() < cols) continue;
        ++built;
        const int samples = cols <= 8 ? (1 << cols) : 256;
        for (int s = 0; s < samples; ++s) {
            const uint64_t v = cols <= 8 ? static_cast<uint64_t>(s) : rng();
            std::vector<uint8_t> x(cols);
            for (int c = 0; c < cols; ++c) x[c] = (v >> c) & 1;
            std::vector<uint8_t> y(rows, 0);
            for (int r = 0; r < rows; ++r) {
                bool bit = false;
                for (int c = 0; c < cols; ++c) bit ^= a.at(r, c) && x[c];
                y[r] = bit ? 1 : 0;
            }
            REQUIRE(solve_gf2(a, y) == x);
        }
    }
}

TEST_CASE("linear system isolates determined unknowns only") {
    // x0 appears only together with x1; x2 stands alone.
    Gf2Matrix a(2, 3);
    a.set(0, 0, true);
    a.set(0, 1, true);
    a.set(1, 2, true);
    const LinearSystem sys(a);
    CHECK(sys.rank() == 2);
    CHECK(!sys.determines(0));
    CHECK(!sys.determines(1));
    CHECK(sys.determines(2));
    CHECK(sys.decode(2, {1, 1}) == true);
    CHECK(!sys.decode(0, {1, 1}).has_value());
}
