#pragma once

// Isomorph-free generation of maximal arc systems (ideal triangulations
// with labeled marked points and punctures) on the cover F_g, and sweeps of
// the rank and chain bounds over the generated ambients.
//
// Generation glues T triangles and P = s - m once-punctured monogons. Each
// rooted gluing is produced once: the lowest open side is glued either to a
// later open side or to the first side of a fresh face. A completed gluing is
// kept only when its root lies in the orbit with the smallest breadth-first
// code (the canonical-parent test), so each unlabeled type appears once.
// Vertex and puncture labelings are then attached and deduplicated by
// canonical form.

#include "arcspine/complexes.hpp"
#include "arcspine/involution.hpp"
#include "arcspine/surface.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace arcspine {

struct EnumerateOptions {
    std::uint64_t budget = 2'000'000;  // search-tree node expansions
    int workers = 1;
    /// Optional relabeling group for orbit-style deduplication.
    std::vector<LabelPermutation> label_group;
};

struct Enumeration {
    std::vector<CombinatorialMap> maps;  // ordered by canonical form
    bool exhaustive = false;
    std::uint64_t expansions = 0;
    std::uint64_t duplicates = 0;  // labelings collapsing onto an earlier form
};

/// Triangle and monogon counts for a context: P = s - m, 3T + P = 2E.
struct FaceCounts {
    int edges = 0;
    int triangles = 0;
    int monogons = 0;
};
FaceCounts maximal_face_counts(const CoverContext& ctx);

Enumeration enumerate_maximal(const CoverContext& ctx, const EnumerateOptions& options = {});

struct SigmaAmbient {
    std::shared_ptr<const CombinatorialMap> map;
    DeckInvolution sigma;
};

struct WalkOptions {
    std::uint64_t seed = 1;
    int target = 100;       // distinct ambients to collect
    int max_steps = 5000;   // attempted equivariant flips
};

struct SigmaEnumeration {
    std::vector<SigmaAmbient> ambients;  // ordered by canonical form
    bool exhaustive = false;
    std::uint64_t expansions = 0;
    int walk_steps = 0;  // 0 unless the flip-walk supplement ran
};

/// Random equivariant flip walk from B_max; every visited map is certified
/// sigma-invariant and maximal. Returns the distinct visited types.
std::vector<SigmaAmbient> sigma_flip_walk(const CoverContext& ctx, const WalkOptions& walk, int* steps_taken = nullptr);

/// Exhaustive when enumerate_maximal finishes within budget, otherwise the
/// flip-walk sample.
SigmaEnumeration enumerate_sigma_maximal(const CoverContext& ctx, const EnumerateOptions& options = {},
                                         const WalkOptions& walk = {});

struct AmbientStats {
    std::string form;
    int edges = 0;
    int min_filling_rank = -1;
    int min_sigma_filling_rank = -1;  // -1 without sigma
    int max_sigma_chain = -1;
    std::uint64_t sigma_subsets = 0;  // sigma-invariant valid subsets scanned
    std::uint64_t odd_sigma_subsets = 0;
};

struct BoundSweep {
    CoverContext ctx;
    bool exact = false;
    RankBounds plain;  // formulas
    RankBounds sigma;
    int spine_dim = 0;
    std::size_t ambient_count = 0;  // ambients entering the non-equivariant minimum
    std::size_t sigma_ambient_count = 0;
    int observed_min_filling_rank = -1;
    int observed_min_sigma_filling_rank = -1;
    int observed_max_sigma_chain = -1;
    std::uint64_t parity_subsets = 0;
    std::uint64_t parity_exceptions = 0;
    std::vector<AmbientStats> sigma_stats;
    /// No observation beyond a bound: every ambient's minimum is at least the
    /// formula and no chain exceeds spine_dim.
    bool consistent = false;
    /// Exact sweeps only: the bounds are attained.
    bool attained = false;
};

AmbientStats ambient_stats(std::shared_ptr<const CombinatorialMap> map, const DeckInvolution* sigma,
                           const PosetOptions& options = {});

BoundSweep sweep_bounds(const CoverContext& ctx, const EnumerateOptions& options = {},
                        const WalkOptions& walk = {});

}  // namespace arcspine
