#include "arcspine/complexes.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <bit>
#include <random>

using namespace arcspine;
using namespace arcspine::test;

namespace {

std::vector<int> trimmed(std::vector<int> b) {
    while (b.size() > 1 && b.back() == 0) {
        b.pop_back();
    }
    return b;
}

}  // namespace

TEST_CASE("sigma-filling posets of B_max") {
    const auto small = bundle_up(0, 4, 2);
    const FillingPoset p = build_poset(small.ambient, &small.sigma, {true, true});
    CHECK(p.contains(small.subset_B.mask()));
    CHECK(p.contains(ArcSubsystem::full(small.ambient).mask()));
    const ChainWitness c = longest_chain(p);
    CHECK(c.length == 1);
    CHECK(c.chain.size() == 2);

    const auto big = bundle_up(2, 2, 2);
    const FillingPoset q = build_poset(big.ambient, &big.sigma, {true, true});
    const ChainWitness d = longest_chain(q);
    CHECK(d.length == 3);
    REQUIRE(d.chain.size() == 4);
    for (std::size_t i = 1; i < d.chain.size(); ++i) {
        CHECK((d.chain[i - 1] & d.chain[i]) == d.chain[i - 1]);
        CHECK(d.chain[i - 1] != d.chain[i]);
        CHECK(q.contains(d.chain[i]));
    }
    for (EdgeMask m : q.nodes) {
        CHECK(std::popcount(m) % 2 == 0);
    }
}

TEST_CASE("unfiltered poset has the full set on top") {
    const auto big = bundle_up(2, 2, 2);
    const FillingPoset all = build_poset(big.ambient, nullptr, {});
    CHECK(all.nodes.size() == 4095);
    CHECK(all.nodes.back() == ArcSubsystem::full(big.ambient).mask());
    CHECK(longest_chain(all).length == 11);
    CHECK(trimmed(order_complex_betti(all.nodes, all.edge_count)) == std::vector<int>{1});

    const auto small = bundle_up(0, 4, 2);
    const FillingPoset s = build_poset(small.ambient, nullptr, {});
    CHECK(s.nodes.size() == 15);
    CHECK(homology_gf2(order_complex(s.nodes)) == oracle::order_complex_betti(s.nodes));
    CHECK(trimmed(homology_gf2(order_complex(s.nodes))) == std::vector<int>{1});
}

TEST_CASE("build_poset honours the edge cap and is independent of workers") {
    const auto small = bundle_up(0, 4, 2);
    PosetOptions tight;
    tight.edge_cap = 3;
    CHECK_THROWS_AS(build_poset(small.ambient, nullptr, {}, tight), Error);

    const auto b = bundle_up(1, 4, 2);
    PosetOptions many;
    many.workers = 4;
    CHECK(build_poset(b.ambient, &b.sigma, {true, false}, many).nodes ==
          build_poset(b.ambient, &b.sigma, {true, false}).nodes);
}

TEST_CASE("longest_chain agrees with a memoized oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int atoms = 3 + trial % 6;
        std::vector<EdgeMask> family;
        for (EdgeMask m = 1; m < (EdgeMask{1} << atoms); ++m) {
            if (rng() % 3 == 0) {
                family.push_back(m);
            }
        }
        CHECK(longest_chain(family, atoms).length == oracle::longest_chain_length(family));
        // The quadratic path on a wide ground set.
        std::vector<EdgeMask> shifted;
        for (EdgeMask m : family) {
            shifted.push_back(m << 30);
        }
        CHECK(longest_chain(shifted, 40).length == oracle::longest_chain_length(family));
    }
    CHECK(longest_chain({}, 4).length == -1);
}

TEST_CASE("GF(2) homology of small complexes") {
    CHECK(homology_gf2(closure_of({{0}}, 1)) == std::vector<int>{1});
    const SimplicialComplex circle = closure_of({{0, 1}, {1, 2}, {0, 2}}, 3);
    CHECK(homology_gf2(circle) == std::vector<int>{1, 1});
    const SimplicialComplex sphere = closure_of({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 4);
    CHECK(homology_gf2(sphere) == std::vector<int>{1, 0, 1});
    const SimplicialComplex two_points = closure_of({{0}, {1}}, 2);
    CHECK(homology_gf2(two_points) == std::vector<int>{2});
    CHECK(boundary_squares_vanish(sphere));
    CHECK(rank_gf2(boundary_matrix(sphere, 2)) == 3);
    CHECK(is_zero(multiply(boundary_matrix(sphere, 1), boundary_matrix(sphere, 2))));
}

TEST_CASE("order complex of a poset with a maximum is acyclic") {
    const std::vector<EdgeMask> family = {1, 2, 4, 3, 5, 7};
    const SimplicialComplex oc = order_complex(family);
    CHECK(boundary_squares_vanish(oc));
    CHECK(trimmed(homology_gf2(oc)) == std::vector<int>{1});
    CHECK(homology_gf2(oc) == oracle::order_complex_betti(family));
    CHECK_THROWS_AS(order_complex(family, 3), Error);
}

TEST_CASE("homotopy model matches explicit order complexes") {
    std::mt19937_64 rng(5);
    for (auto [g, s, m] : {std::tuple{0, 4, 2}, {0, 4, 4}}) {
        const auto b = bundle_up(g, s, m);
        const int E = b.ambient->edge_count();
        const FillingPoset all = build_poset(b.ambient, nullptr, {});
        const FillingPoset filling = build_poset(b.ambient, nullptr, {true, false});
        for (const auto* family : {&all.nodes, &filling.nodes}) {
            REQUIRE(homotopy_model(*family, E).has_value());
            CHECK(trimmed(homology_gf2(*homotopy_model(*family, E))) ==
                  trimmed(oracle::order_complex_betti(*family)));
        }
        const FillingPoset sigma_filling = build_poset(b.ambient, &b.sigma, {true, true});
        const auto orbits = orbit_family(sigma_filling.nodes, b.sigma);
        CHECK(trimmed(order_complex_betti(orbits, E / 2)) == trimmed(oracle::order_complex_betti(orbits)));
    }
    // Families that are neither closed up nor down fall back to chains.
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<EdgeMask> family;
        for (EdgeMask x = 1; x < 32; ++x) {
            if (rng() % 2 == 0) {
                family.push_back(x);
            }
        }
        CHECK(trimmed(order_complex_betti(family, 5)) == trimmed(oracle::order_complex_betti(family)));
    }
    // A hollow simplex: all proper nonempty subsets of 3 atoms.
    CHECK(homology_gf2(*homotopy_model({1, 2, 4, 3, 5, 6}, 3)) == std::vector<int>{1, 1});
    // An up-closed family: complements {4, 2, 1} coned off by the top.
    const std::vector<EdgeMask> upper = {3, 5, 6, 7};
    REQUIRE(homotopy_model(upper, 3).has_value());
    CHECK(homotopy_model(upper, 3)->vertex_count == 4);
    CHECK(trimmed(homology_gf2(*homotopy_model(upper, 3))) == std::vector<int>{1});
    // Dropping the top leaves three points.
    CHECK(order_complex_betti({3, 5, 6}, 3) == std::vector<int>{3});
}

TEST_CASE("weight-ordered collapse on B_max") {
    for (auto [g, s, m] : {std::tuple{0, 4, 2}, {2, 2, 2}}) {
        const auto b = bundle_up(g, s, m);
        const FillingPoset all = build_poset(b.ambient, &b.sigma, {});
        const CollapseTrace trace = weight_stratified_collapse(all);
        const int E = b.ambient->edge_count();
        REQUIRE(trace.stages.size() == static_cast<std::size_t>(E + 1));
        for (int k = 1; k <= E; ++k) {
            CHECK(trace.stages[k].removed_rank == k - 1);
        }
        CHECK(trace.ends_at_filling_poset);
        CHECK(trace.betti_constant);
        CHECK(trace.all_sigma_stable);
        for (const CollapseStage& st : trace.stages) {
            CHECK(trimmed(st.betti) == std::vector<int>{1});
        }
        const FillingPoset filling = build_poset(b.ambient, &b.sigma, {true, false});
        CHECK(trace.stages.back().remaining == filling.nodes.size());
    }
    {
        // Small poset: every stage cross-checked against explicit chains.
        const auto b = bundle_up(0, 4, 2);
        const FillingPoset all = build_poset(b.ambient, &b.sigma, {});
        const ArcOracle oracle(*b.ambient);
        std::vector<EdgeMask> current = all.nodes;
        const CollapseTrace trace = weight_stratified_collapse(all);
        for (std::size_t k = 1; k < trace.stages.size(); ++k) {
            std::vector<EdgeMask> next;
            for (EdgeMask x : current) {
                if (!(std::popcount(x) == static_cast<int>(k) && !oracle.fills(x))) {
                    next.push_back(x);
                }
            }
            current = next;
            CHECK(trace.stages[k].remaining == current.size());
            CHECK(trimmed(trace.stages[k].betti) == trimmed(oracle::order_complex_betti(current)));
        }
    }
}

TEST_CASE("collapse with nothing to remove is the identity trace") {
    const auto b = bundle_up(0, 4, 2);
    FillingPoset filling_only = build_poset(b.ambient, &b.sigma, {true, false});
    filling_only.flags = {};
    const CollapseTrace trace = weight_stratified_collapse(filling_only);
    for (const CollapseStage& st : trace.stages) {
        CHECK(st.removed.empty());
        CHECK(st.remaining == filling_only.nodes.size());
    }
    CHECK(trace.ends_at_filling_poset);
    CHECK(trace.betti_constant);

    const FillingPoset wrong = build_poset(b.ambient, &b.sigma, {true, false});
    CHECK_THROWS_AS(weight_stratified_collapse(wrong), Error);
}
