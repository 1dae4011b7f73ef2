#include "arcspine/surface.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace arcspine;

TEST_CASE("cover_signature lifts downstairs parameters") {
    const CoverContext a = cover_signature(3, 1, 1);
    CHECK(a.g == 2);
    CHECK(a.s == 2);
    CHECK(a.m == 2);
    const CoverContext b = cover_signature(1, 2, 1);
    CHECK(b.g == 0);
    CHECK(b.s == 4);
    CHECK(b.m == 2);
    const CoverContext c = cover_signature(2, 2, 2);
    CHECK(c.g == 1);
    CHECK(c.s == 4);
    CHECK(c.m == 4);
    CHECK(c.m == c.s);
}

TEST_CASE("cover_signature rejects contexts outside the hypothesis") {
    auto code = [](int gn, int n, int l) {
        try {
            cover_signature(gn, n, l);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    CHECK(code(1, 1, 1) == ErrorCode::InvalidContext);  // g + n = 1
    CHECK(code(2, 2, 3) == ErrorCode::InvalidContext);  // l > n
    CHECK(code(2, 2, 0) == ErrorCode::InvalidContext);  // l < 1
    CHECK(code(0, 2, 1) == ErrorCode::InvalidContext);  // genus of N below 1
    CHECK_THROWS_AS(cover_from_upstairs(1, 3, 2), Error);
}

TEST_CASE("dimension_report on small contexts") {
    const DimensionReport a = dimension_report(cover_signature(3, 1, 1));
    CHECK(a.spine_dim == 3);
    CHECK(a.vcd == 3);
    CHECK(a.arc_complex_dim == 11);
    CHECK(a.ideal_triangulation_dim == 5);  // 3g+2n+l-4 with g=2, n=1, l=1
    CHECK(a.decorated_nonorientable == a.ideal_triangulation_dim);

    const DimensionReport b = dimension_report(cover_signature(2, 2, 1));
    CHECK(b.spine_dim == 3);
    CHECK(b.vcd == 2);
    CHECK(b.ideal_triangulation_dim == 4);

    const DimensionReport c = dimension_report(cover_signature(1, 2, 1));
    CHECK(c.spine_dim == 1);
    CHECK(c.vcd == 0);
    CHECK(c.ideal_triangulation_dim == 1);  // 3g+2n+l-4 with g=0, n=2, l=1
    CHECK(c.teich_orientable == 2);
}

TEST_CASE("rank_bounds examples") {
    const RankBounds a = rank_bounds(cover_from_upstairs(2, 2, 2), true);
    CHECK(a.min_filling_rank == 5);
    CHECK(a.max_rank == 11);
    const RankBounds b = rank_bounds(cover_from_upstairs(0, 4, 2), true);
    CHECK(b.min_filling_rank == 1);
    CHECK(b.max_rank == 3);
    const RankBounds c = rank_bounds(cover_from_upstairs(0, 4, 4), false);
    CHECK(c.min_filling_rank == 2);
    CHECK(c.max_rank == 5);
}

TEST_CASE("closed forms agree with an independent transcription over the grid") {
    int contexts = 0;
    for (int g = 0; g <= 10; ++g) {
        for (int n = 1; n <= 10; ++n) {
            for (int l = 1; l <= n; ++l) {
                if (g + n <= 1) {
                    continue;
                }
                ++contexts;
                const auto o = oracle::closed(g, n, l);
                const CoverContext ctx = cover_signature(g + 1, n, l);
                const DimensionReport d = dimension_report(ctx);
                REQUIRE(d.spine_dim == o.spine());
                REQUIRE(d.vcd == o.vcd());
                REQUIRE(d.ideal_triangulation_dim == o.ideal());
                REQUIRE(d.decorated_nonorientable == o.decorated());
                REQUIRE(rank_bounds(ctx, true).min_filling_rank == o.min_sigma());
                REQUIRE(rank_bounds(ctx, false).min_filling_rank == o.min_plain());
                REQUIRE(rank_bounds(ctx, true).max_rank == o.max_rank());
                REQUIRE(d.spine_dim - d.vcd == (l < n ? l : l - 1));
                REQUIRE(o.max_rank() - o.min_sigma() == 2 * o.spine());
                REQUIRE(o.max_rank() % 2 != 0);
                REQUIRE(o.min_sigma() % 2 != 0);
            }
        }
    }
    int visited = 0;
    CHECK(check_formula_grid(10, 10, &visited).empty());
    CHECK(visited == contexts);
}
