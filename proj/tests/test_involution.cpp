#include "arcspine/involution.hpp"

#include "support.hpp"

#include <doctest.h>

#include <bit>

using namespace arcspine;
using namespace arcspine::test;

namespace {

ErrorCode failure(const CombinatorialMap& map, std::vector<Dart> iota) {
    try {
        check_involution(map, std::move(iota));
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("the antipodal map on the two-bigon sphere is a deck involution") {
    const CombinatorialMap map = two_bigon();
    CHECK(involution_violations(map, two_bigon_antipode()).empty());
    const DeckInvolution sigma = check_involution(map, two_bigon_antipode());
    CHECK(sigma.edge_image(0) == 1);
    CHECK(sigma.edge_image(1) == 0);
    const auto found = find_deck_involutions(map);
    REQUIRE(found.size() == 1);
    CHECK(found[0].darts() == two_bigon_antipode());
}

TEST_CASE("check_involution failure modes") {
    CHECK(failure(two_bigon(), {0, 1, 2, 3}) == ErrorCode::FixedVertex);
    CHECK(failure(two_bigon(), {1, 2, 3, 0}) == ErrorCode::NotInvolutive);
    CHECK(failure(grid_torus(), grid_translation()) == ErrorCode::OrientationPreserving);
    CHECK(failure(two_bigon(), {0, 1}) == ErrorCode::NotInvolutive);

    // Vertices p1, p3 and floating p2, p4: the antipode pairs p1 with p3.
    MapData d = two_bigon_data();
    d.vertex_labels = {{0, 1}, {1, 3}};
    d.face_punctures = {};
    d.floating = {{0, 2}, {1, 4}};
    d.marked = 4;
    d.points = 4;
    const CombinatorialMap relabeled = build_map(d);
    CHECK(failure(relabeled, two_bigon_antipode()) == ErrorCode::LabelPairingBroken);
}

TEST_CASE("sigma-invariance of subsystems") {
    const auto b = bundle_up(2, 2, 2);
    CHECK(is_sigma_invariant(b.subset_B, b.sigma));
    for (int e = 0; e < b.ambient->edge_count(); ++e) {
        CHECK_FALSE(is_sigma_invariant(ArcSubsystem(b.ambient, {e}), b.sigma));
        CHECK(is_sigma_invariant(ArcSubsystem(b.ambient, {e, b.sigma.edge_image(e)}), b.sigma));
    }
    const ArcOracle oracle(*b.ambient);
    for (EdgeMask mask = 1; mask < (EdgeMask{1} << b.ambient->edge_count()); mask += 37) {
        const EdgeMask closed = mask | b.sigma.image(mask);
        if (oracle.valid(closed)) {
            CHECK(is_sigma_invariant(ArcSubsystem::from_mask(b.ambient, closed), b.sigma));
        }
    }
}

TEST_CASE("sigma_filtration") {
    const auto b = bundle_up(2, 2, 2);
    const auto chain = sigma_filtration(ArcSubsystem::full(b.ambient), b.sigma);
    REQUIRE(chain.size() == 6);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        CHECK(chain[i].size() == static_cast<int>(2 * (i + 1)));
        CHECK(is_valid(chain[i]));
        CHECK(is_sigma_invariant(chain[i], b.sigma));
    }
    // The smallest unused edge seeds each step.
    CHECK(chain[0].edges() == std::vector<int>{0, b.sigma.edge_image(0)});

    CHECK(sigma_filtration(b.subset_B, b.sigma).size() == 3);
    CHECK(sigma_filtration(ArcSubsystem(b.ambient, {0, b.sigma.edge_image(0)}), b.sigma).size() == 1);
    CHECK_THROWS_AS(sigma_filtration(ArcSubsystem(b.ambient, {0}), b.sigma), Error);
}

TEST_CASE("sigma preserves validity and filling") {
    for (auto [g, s, m] : {std::tuple{0, 4, 2}, {0, 4, 4}, {2, 2, 2}}) {
        const auto b = bundle_up(g, s, m);
        const ArcOracle oracle(*b.ambient);
        bool ok = true;
        for (EdgeMask mask = 1; mask < (EdgeMask{1} << b.ambient->edge_count()); ++mask) {
            const auto v = oracle.classify(mask);
            const auto w = oracle.classify(b.sigma.image(mask));
            ok = ok && v.valid == w.valid && v.fills == w.fills && v.maximal == w.maximal;
        }
        CHECK(ok);
    }
}

TEST_CASE("equivariant flip walk stays sigma-invariant and maximal") {
    const auto b = bundle_up(2, 2, 2);
    SigmaMap current{*b.ambient, b.sigma};
    std::mt19937_64 rng(11);
    int steps = 0;
    int rejected = 0;
    while (steps < 100) {
        const int e = static_cast<int>(rng() % static_cast<std::uint64_t>(current.map.edge_count()));
        try {
            current = equivariant_flip(current.map, current.sigma, e);
        } catch (const Error& err) {
            CHECK((err.code() == ErrorCode::NotFlippable || err.code() == ErrorCode::SymmetryBroken));
            ++rejected;
            REQUIRE(rejected < 10000);
            continue;
        }
        ++steps;
        const auto map = std::make_shared<const CombinatorialMap>(current.map);
        const ArcSubsystem full = ArcSubsystem::full(map);
        REQUIRE(involution_violations(current.map, current.sigma.darts()).empty());
        REQUIRE(is_sigma_invariant(full, current.sigma));
        REQUIRE(is_maximal(full));
        REQUIRE(current.map.euler_characteristic() == -2);
    }
    CHECK(steps == 100);
}

TEST_CASE("parity of sigma-invariant valid subsets on B_max") {
    for (auto [g, s, m] : {std::tuple{0, 4, 2}, {2, 2, 2}, {1, 4, 4}}) {
        const auto b = bundle_up(g, s, m);
        const ArcOracle oracle(*b.ambient);
        int odd = 0;
        int invariant = 0;
        for (EdgeMask mask = 1; mask < (EdgeMask{1} << b.ambient->edge_count()); ++mask) {
            if (b.sigma.image(mask) == mask && oracle.valid(mask)) {
                ++invariant;
                odd += std::popcount(mask) % 2;
            }
        }
        CHECK(invariant > 0);
        CHECK(odd == 0);
    }
}
