#pragma once

// Hand-built maps and small helpers shared by the test suites.

#include "arcspine/constructions.hpp"
#include "arcspine/ribbon.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

namespace arcspine::test {

// Sphere with two vertices p1, p2 joined by two edges; faces (0 3) and
// (1 2) hold punctures p3 and p4.
inline MapData two_bigon_data() {
    MapData d;
    d.darts = 4;
    d.alpha = {1, 0, 3, 2};
    d.rho = {2, 3, 0, 1};
    d.vertex_labels = {{0, 1}, {1, 2}};
    d.face_punctures = {{0, 3}, {1, 4}};
    return d;
}

inline CombinatorialMap two_bigon() { return build_map(two_bigon_data()); }

// The antipodal map on the two-bigon sphere.
inline std::vector<Dart> two_bigon_antipode() { return {3, 2, 1, 0}; }

// Torus from a 2x1 grid: two squares, two vertices, four edges.
inline CombinatorialMap grid_torus() {
    FaceListData f;
    f.faces = {{0, 6, 1, 5}, {2, 4, 3, 7}};
    f.alpha = {1, 0, 3, 2, 5, 4, 7, 6};
    f.origin = {1, 2, 2, 1, 1, 1, 2, 2};
    f.punctures = {{}, {}};
    f.genus = 1;
    f.marked = 2;
    f.points = 2;
    return map_from_faces(f);
}

// The translation of the grid torus swapping its two squares.
inline std::vector<Dart> grid_translation() { return {2, 3, 0, 1, 6, 7, 4, 5}; }

inline std::vector<Dart> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<Dart> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        std::swap(p[i], p[rng() % static_cast<std::uint64_t>(i + 1)]);
    }
    return p;
}

inline ConstructionBundle bundle_up(int g, int s, int m) { return build_constructions(cover_from_upstairs(g, s, m)); }

}  // namespace arcspine::test
