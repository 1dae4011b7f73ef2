#include "arcspine/ribbon.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace arcspine;
using namespace arcspine::test;

namespace {

bool has_code(const std::vector<Violation>& vs, ErrorCode code) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("two-bigon sphere builds with V=2, E=2, F=2") {
    const CombinatorialMap map = two_bigon();
    CHECK(map.vertex_count() == 2);
    CHECK(map.edge_count() == 2);
    CHECK(map.face_count() == 2);
    CHECK(map.euler_characteristic() == 2);
    CHECK(map.genus() == 0);
    CHECK(map.marked_count() == 2);
    CHECK(map.point_count() == 4);
}

TEST_CASE("build_map reports structural violations") {
    SUBCASE("alpha with a fixed dart") {
        MapData d = two_bigon_data();
        d.alpha = {0, 1, 3, 2};
        CHECK(has_code(validate_map(d), ErrorCode::InvalidInvolution));
        CHECK_THROWS_AS(build_map(d), MapError);
    }
    SUBCASE("declared genus disagrees with Euler characteristic") {
        MapData d = two_bigon_data();
        d.genus = 1;
        CHECK(has_code(validate_map(d), ErrorCode::EulerMismatch));
    }
    SUBCASE("one label on two vertices") {
        MapData d = two_bigon_data();
        d.vertex_labels = {{0, 1}, {1, 1}};
        CHECK(has_code(validate_map(d), ErrorCode::DuplicateVertexLabel));
    }
    SUBCASE("a declared puncture assigned to no face") {
        MapData d = two_bigon_data();
        d.face_punctures = {{0, 3}};
        d.points = 4;
        CHECK(has_code(validate_map(d), ErrorCode::UnassignedPuncture));
    }
    SUBCASE("rho that is not a permutation") {
        MapData d = two_bigon_data();
        d.rho = {2, 2, 0, 1};
        CHECK(has_code(validate_map(d), ErrorCode::InvalidPermutation));
    }
    SUBCASE("a clean map has no violations") {
        CHECK(validate_map(two_bigon_data()).empty());
    }
}

TEST_CASE("face tracing") {
    const CombinatorialMap map = two_bigon();
    REQUIRE(map.face_count() == 2);
    int total = 0;
    for (int f = 0; f < map.face_count(); ++f) {
        CHECK(map.boundary_word(f).size() == 2);
        CHECK(map.face_corner_count(f) == 2);
        total += static_cast<int>(map.faces()[f].size());
    }
    CHECK(total == map.dart_count());
    // phi = rho o alpha on the hand table: (0 3) and (1 2).
    CHECK(map.phi(0) == 3);
    CHECK(map.phi(3) == 0);
    CHECK(map.phi(1) == 2);

    const auto b = bundle_up(2, 2, 2);
    CHECK(b.ambient->face_count() == 8);
    for (const auto& face : b.ambient->faces()) {
        CHECK(face.size() == 3);
    }
    int sum = 0;
    for (const auto& face : b.ambient->faces()) {
        sum += static_cast<int>(face.size());
    }
    CHECK(sum == b.ambient->dart_count());
}

TEST_CASE("cycles of alpha, rho and phi partition the darts") {
    for (auto [g, s, m] : {std::tuple{0, 4, 2}, {1, 4, 2}, {2, 2, 2}, {0, 6, 4}}) {
        const auto b = bundle_up(g, s, m);
        const CombinatorialMap& map = *b.ambient;
        std::vector<int> seen_v(map.dart_count(), 0), seen_f(map.dart_count(), 0);
        for (const auto& v : map.vertices()) {
            for (Dart d : v) {
                ++seen_v[d];
            }
        }
        for (const auto& f : map.faces()) {
            for (Dart d : f) {
                ++seen_f[d];
            }
        }
        CHECK(std::all_of(seen_v.begin(), seen_v.end(), [](int c) { return c == 1; }));
        CHECK(std::all_of(seen_f.begin(), seen_f.end(), [](int c) { return c == 1; }));
        for (Dart d = 0; d < map.dart_count(); ++d) {
            CHECK(map.alpha(map.alpha(d)) == d);
            CHECK(map.alpha(d) != d);
        }
    }
}

TEST_CASE("canonical_form respects labels and the label group") {
    const CombinatorialMap a = two_bigon();
    MapData swapped = two_bigon_data();
    swapped.face_punctures = {{0, 4}, {1, 3}};
    const CombinatorialMap b = build_map(swapped);
    // The half-turn through p1 and p2 swaps the two faces.
    CHECK(is_isomorphic(a, b));
    CHECK(canonical_form(a) != canonical_form(grid_torus()));
    const std::vector<LabelPermutation> group = {{0, 1, 2, 3, 4}, {0, 1, 2, 4, 3}};
    CHECK(is_isomorphic(a, b, group));
    CHECK(canonical_form(a, group) == canonical_form(b, group));

    std::mt19937_64 rng(7);
    const auto perm = random_permutation(a.dart_count(), rng);
    CHECK(canonical_form(rename_darts(a, perm)) == canonical_form(a));
}

TEST_CASE("automorphisms of labeled maps") {
    // The labeled two-bigon sphere has only the identity.
    CHECK(automorphisms(two_bigon()).size() == 1);
    // The unlabeled-up-to-rotation torus grid has at least the identity.
    CHECK(!automorphisms(grid_torus()).empty());
}

TEST_CASE("delete_edges merges regions") {
    const CombinatorialMap map = two_bigon();
    SUBCASE("delete one edge") {
        const std::vector<int> removed{1};
        const EdgeDeletion cut = delete_edges(map, removed);
        REQUIRE(cut.regions.size() == 1);
        const Region r = cut.regions[0];
        CHECK(r.euler_char == 1);
        CHECK(r.boundary_corner_arcs == 2);
        CHECK(r.punctures_inside == 2);
        CHECK(r.interior_marked == 0);
        REQUIRE(cut.reduced.has_value());
        CHECK(cut.reduced->edge_count() == 1);
        CHECK(cut.reduced->face_count() == 1);
        CHECK(cut.reduced->face_punctures(0).size() == 2);
    }
    SUBCASE("delete nothing") {
        const EdgeDeletion cut = delete_edges(map, {});
        REQUIRE(cut.reduced.has_value());
        CHECK(*cut.reduced == map);
        CHECK(cut.regions.size() == 2);
    }
    SUBCASE("delete everything") {
        const std::vector<int> removed{0, 1};
        CHECK_THROWS_AS(delete_edges(map, removed), Error);
    }
}

TEST_CASE("deleting the fan at p2 leaves p2 floating in one region") {
    const auto b = bundle_up(2, 2, 2);
    const CombinatorialMap& map = *b.ambient;
    const int v = map.vertex_with_label(2);
    REQUIRE(v >= 0);
    std::vector<int> removed;
    for (Dart d : map.vertices()[v]) {
        removed.push_back(map.edge_of(d));
    }
    std::sort(removed.begin(), removed.end());
    removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
    const EdgeDeletion cut = delete_edges(map, removed);
    int count = 0;
    for (const auto& [label, region] : cut.floating) {
        count += label == 2;
        CHECK(region >= 0);
    }
    CHECK(count == 1);
    int interior = 0;
    for (const Region& r : cut.regions) {
        interior += r.interior_marked;
    }
    CHECK(interior == 1);
}

TEST_CASE("flips") {
    const auto b = bundle_up(2, 2, 2);
    const CombinatorialMap& map = *b.ambient;
    int flipped = 0;
    for (int e = 0; e < map.edge_count(); ++e) {
        if (!is_flippable(map, e)) {
            continue;
        }
        ++flipped;
        const CombinatorialMap once = flip(map, e);
        CHECK(once.euler_characteristic() == map.euler_characteristic());
        CHECK(once.edge_count() == map.edge_count());
        for (const auto& face : once.faces()) {
            CHECK(face.size() == 3);
        }
        CHECK(is_flippable(once, e));
        CHECK(is_isomorphic(flip(once, e), map));
    }
    CHECK(flipped > 0);

    const auto small = bundle_up(0, 4, 2);
    bool monogon_seen = false;
    for (int e = 0; e < small.ambient->edge_count(); ++e) {
        const auto& [d0, d1] = small.ambient->edge_darts(e);
        if (small.ambient->faces()[small.ambient->face_of(d0)].size() == 1 ||
            small.ambient->faces()[small.ambient->face_of(d1)].size() == 1) {
            monogon_seen = true;
            CHECK_FALSE(is_flippable(*small.ambient, e));
            CHECK_THROWS_AS(flip(*small.ambient, e), Error);
        }
    }
    CHECK(monogon_seen);
}
