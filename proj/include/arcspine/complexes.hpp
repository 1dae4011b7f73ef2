#pragma once

// Finite local pieces of the arc complex: posets of subsystems of one
// ambient map ordered by inclusion, their order complexes, longest chains,
// GF(2) homology and the weight-ordered removal of non-filling systems.

#include "arcspine/involution.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace arcspine {

struct PosetFlags {
    bool filling = false;
    bool sigma = false;
};

struct PosetOptions {
    int edge_cap = 20;
    int workers = 1;
};

struct FillingPoset {
    std::shared_ptr<const CombinatorialMap> ambient;
    std::optional<DeckInvolution> sigma;
    PosetFlags flags;
    int edge_count = 0;
    /// Valid subsystems passing the filters, sorted by (size, mask).
    std::vector<EdgeMask> nodes;

    bool contains(EdgeMask mask) const;
};

/// Exhaustive scan of all 2^E - 1 nonempty subsets. Throws
/// Error(BudgetExceeded) above the edge cap.
FillingPoset build_poset(std::shared_ptr<const CombinatorialMap> ambient, const DeckInvolution* sigma,
                         PosetFlags flags, const PosetOptions& options = {});

/// Orders masks by (popcount, value).
void sort_by_size(std::vector<EdgeMask>& masks);

struct ChainWitness {
    int length = -1;  // number of strict inclusions; -1 for an empty poset
    std::vector<EdgeMask> chain;
};

ChainWitness longest_chain(const FillingPoset& poset);
ChainWitness longest_chain(const std::vector<EdgeMask>& family, int edge_count);

/// Smallest rank (size - 1) among the nodes, or -1 if there are none.
int min_rank(const std::vector<EdgeMask>& nodes);

// ---------------------------------------------------------------------------
// Simplicial complexes over GF(2)

using Simplex = std::vector<int>;  // sorted vertex ids

struct SimplicialComplex {
    int vertex_count = 0;
    std::vector<std::vector<Simplex>> simplices;  // by dimension, sorted

    int dimension() const { return static_cast<int>(simplices.size()) - 1; }
    std::size_t size() const;
};

/// Builds a complex from its facets-or-faces list, closing it under faces.
SimplicialComplex closure_of(const std::vector<Simplex>& faces, int vertex_count);

/// Boundary matrix d_k over GF(2): one bit-column per k-simplex, rows are
/// (k-1)-simplices.
struct Gf2Matrix {
    int rows = 0;
    std::vector<std::vector<std::uint64_t>> columns;
};

Gf2Matrix boundary_matrix(const SimplicialComplex& complex, int k);
Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b);
bool is_zero(const Gf2Matrix& m);
int rank_gf2(Gf2Matrix m);

/// Betti numbers over GF(2), one entry per dimension 0..dim.
std::vector<int> homology_gf2(const SimplicialComplex& complex);

/// Checks d_{k-1} d_k = 0 for every k.
bool boundary_squares_vanish(const SimplicialComplex& complex);

/// Order complex with the nodes as vertices and the inclusion chains as
/// simplices. Throws Error(BudgetExceeded) beyond max_simplices.
SimplicialComplex order_complex(const std::vector<EdgeMask>& nodes, std::size_t max_simplices = 2'000'000);

/// A complex homeomorphic to the order complex of a family of subsets of a
/// ground set with `atoms` elements. A downward-closed family is the face
/// poset of itself; an upward-closed family is, after complementation, the
/// face poset of a complex (coned off when the whole ground set belongs to
/// it). Returns nullopt for families that are neither.
std::optional<SimplicialComplex> homotopy_model(const std::vector<EdgeMask>& family, int atoms);

/// Betti numbers of the order complex of a family: via homotopy_model when
/// possible, otherwise from the explicit order complex.
std::vector<int> order_complex_betti(const std::vector<EdgeMask>& family, int atoms,
                                     std::size_t max_simplices = 2'000'000);

/// Rewrites a family of sigma-invariant edge masks as masks over the orbits.
std::vector<EdgeMask> orbit_family(const std::vector<EdgeMask>& family, const DeckInvolution& sigma);

// ---------------------------------------------------------------------------
// Weight-ordered collapse

struct CollapseStage {
    int removed_rank = -1;  // -1 for the initial complex
    std::vector<EdgeMask> removed;
    std::size_t remaining = 0;
    std::vector<int> betti;
    bool sigma_stable = true;
};

struct CollapseTrace {
    std::vector<CollapseStage> stages;
    bool ends_at_filling_poset = false;
    bool betti_constant = false;
    bool all_sigma_stable = true;
};

/// Starting from the poset of all valid subsystems, stage k removes the open
/// stars of the non-filling systems of rank k-1. Betti numbers are recorded
/// after every stage. Throws Error(OrderViolation) if a non-filling node of
/// lower rank survives its stage.
CollapseTrace weight_stratified_collapse(const FillingPoset& all_valid, const PosetOptions& options = {});

}  // namespace arcspine
