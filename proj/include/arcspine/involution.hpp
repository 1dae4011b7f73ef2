#pragma once

// The deck involution of the orientation double cover, acting on darts.

#include "arcspine/arcs.hpp"

#include <optional>
#include <vector>

namespace arcspine {

/// Marked points and punctures are paired p_{2i-1} <-> p_{2i}.
constexpr Label partner_label(Label l) { return (l % 2 == 1) ? l + 1 : l - 1; }

class DeckInvolution {
public:
    Dart operator()(Dart d) const { return iota_[d]; }
    const std::vector<Dart>& darts() const { return iota_; }
    /// Image of an edge id.
    int edge_image(int e) const { return edge_image_[e]; }
    const std::vector<int>& edge_permutation() const { return edge_image_; }
    EdgeMask image(EdgeMask mask) const;
    /// Edge orbits {e, sigma(e)} with e < sigma(e), sorted by e.
    std::vector<std::pair<int, int>> edge_orbits() const;

    friend bool operator==(const DeckInvolution&, const DeckInvolution&) = default;

private:
    friend DeckInvolution check_involution(const CombinatorialMap& map, std::vector<Dart> iota);
    std::vector<Dart> iota_;
    std::vector<int> edge_image_;
};

/// Every failed condition, in checking order.
std::vector<Violation> involution_violations(const CombinatorialMap& map,
                                             const std::vector<Dart>& iota);

/// Throws Error with the first failed condition: NotInvolutive, NotAutomorphism,
/// FixedVertex, FixedEdge, FixedFace, OrientationPreserving, LabelPairingBroken.
DeckInvolution check_involution(const CombinatorialMap& map, std::vector<Dart> iota);

/// The orientation-reversing dart map sending seed to image, if it exists
/// and passes check_involution.
std::optional<DeckInvolution> extend_involution(const CombinatorialMap& map, Dart seed, Dart image);

/// All deck involutions of a map, ordered by their dart tables.
std::vector<DeckInvolution> find_deck_involutions(const CombinatorialMap& map);

bool is_sigma_invariant(const ArcSubsystem& sys, const DeckInvolution& sigma);

/// A_1 < A_2 < ... < A_k = sys with |A_i| = 2i, each sigma-invariant. The
/// next orbit is always seeded by the smallest unused edge id.
/// Throws Error(NotSigmaInvariant) or Error(NotValidSystem).
std::vector<ArcSubsystem> sigma_filtration(const ArcSubsystem& sys, const DeckInvolution& sigma);

struct SigmaMap {
    CombinatorialMap map;
    DeckInvolution sigma;
};

/// Flips `edge`, then its sigma-image, and revalidates the involution on the
/// result. Throws Error(NotFlippable) or Error(SymmetryBroken).
SigmaMap equivariant_flip(const CombinatorialMap& map, const DeckInvolution& sigma, int edge);

}  // namespace arcspine
