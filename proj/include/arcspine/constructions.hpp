#pragma once

// Explicit sigma-invariant arc systems on the double cover of N_{g+1}:
//   B      2g+2 arcs cutting F_g into two (2g+2)-gons swapped by sigma,
//   B_min  a minimal-rank sigma-invariant filling system containing B,
//   B_max  a sigma-invariant ideal triangulation containing B_min,
// and the chain B_min < ... < B_max that adds one sigma-orbit at a time.
//
// The cover is assembled from one polygon P and its mirror image sigma(P).
// The sides of P are glued crosscap-style: side 2j of P to the mirror of
// side 2j+1, so P's corners alternate between p1 and p2. Everything added
// afterwards lives inside P and is copied into sigma(P), so edge 2t and
// 2t+1 always form a sigma-orbit.

#include "arcspine/involution.hpp"
#include "arcspine/surface.hpp"

#include <memory>
#include <string>
#include <vector>

namespace arcspine {

struct ConstructionBundle {
    CoverContext ctx;
    std::shared_ptr<const CombinatorialMap> ambient;  // B_max
    DeckInvolution sigma;
    ArcSubsystem subset_B;
    ArcSubsystem subset_Bmin;
    std::vector<ArcSubsystem> chain;  // B_min, ..., B_max
};

/// Builds the whole family for a context. Throws Error(ConstructionFailed)
/// if the generated map fails its structural checks.
ConstructionBundle build_constructions(const CoverContext& ctx);

ConstructionBundle canonical_sigma_system(const CoverContext& ctx);
ConstructionBundle maximal_sigma_system(const CoverContext& ctx);
ArcSubsystem minimal_sigma_filling(const CoverContext& ctx);
/// Throws Error(ChainBroken) if a chain member is not a sigma-invariant
/// filling system or consecutive members do not differ by one orbit.
std::vector<ArcSubsystem> maximal_chain(const CoverContext& ctx);

struct CertificateItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Independent checks of every bundle invariant through the arcs and
/// involution predicates.
std::vector<CertificateItem> certify(const ConstructionBundle& bundle);

}  // namespace arcspine
