#include "arcspine/involution.hpp"

#include <algorithm>
#include <set>

namespace arcspine {

EdgeMask DeckInvolution::image(EdgeMask mask) const {
    EdgeMask out = 0;
    for (std::size_t e = 0; e < edge_image_.size(); ++e) {
        if ((mask >> e) & 1u) {
            out |= EdgeMask{1} << edge_image_[e];
        }
    }
    return out;
}

std::vector<std::pair<int, int>> DeckInvolution::edge_orbits() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t e = 0; e < edge_image_.size(); ++e) {
        if (static_cast<int>(e) < edge_image_[e]) {
            out.emplace_back(static_cast<int>(e), edge_image_[e]);
        }
    }
    return out;
}

namespace {

// Whether the image of a cycle (as a set of darts) is the same cycle.
bool fixes_some_cycle(const std::vector<std::vector<Dart>>& cycles, const std::vector<int>& owner,
                      const std::vector<Dart>& iota) {
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (owner[iota[cycles[c][0]]] == static_cast<int>(c)) {
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<Violation> involution_violations(const CombinatorialMap& map,
                                             const std::vector<Dart>& iota) {
    std::vector<Violation> out;
    const int n = map.dart_count();
    bool permutation = static_cast<int>(iota.size()) == n;
    if (permutation) {
        std::vector<char> seen(n, 0);
        for (Dart d : iota) {
            if (d < 0 || d >= n || seen[d]) {
                permutation = false;
                break;
            }
            seen[d] = 1;
        }
    }
    if (!permutation) {
        out.push_back({ErrorCode::NotInvolutive, "not a permutation of the darts"});
        return out;
    }
    for (Dart d = 0; d < n; ++d) {
        if (iota[iota[d]] != d) {
            out.push_back({ErrorCode::NotInvolutive, "iota^2 moves dart " + std::to_string(d)});
            return out;
        }
    }
    bool reverses = true;
    bool preserves = true;
    for (Dart d = 0; d < n; ++d) {
        if (iota[map.alpha(d)] != map.alpha(iota[d])) {
            reverses = preserves = false;
            break;
        }
        if (iota[map.rho(d)] != map.rho_inverse(iota[d])) {
            reverses = false;
        }
        if (iota[map.rho(d)] != map.rho(iota[d])) {
            preserves = false;
        }
    }
    if (!reverses && !preserves) {
        out.push_back({ErrorCode::NotAutomorphism, "iota does not commute with the map structure"});
        return out;
    }

    std::vector<int> vertex_owner(n);
    for (Dart d = 0; d < n; ++d) {
        vertex_owner[d] = map.vertex_of(d);
    }
    // A reflection carries the face left of d to the face left of alpha(iota(d)).
    auto image_face = [&](int f) {
        const Dart d = map.faces()[f][0];
        return map.face_of(reverses ? map.alpha(iota[d]) : iota[d]);
    };
    if (fixes_some_cycle(map.vertices(), vertex_owner, iota)) {
        out.push_back({ErrorCode::FixedVertex, "iota fixes a vertex"});
    }
    for (int e = 0; e < map.edge_count(); ++e) {
        if (map.edge_of(iota[map.edge_darts(e)[0]]) == e) {
            out.push_back({ErrorCode::FixedEdge, "iota fixes edge " + std::to_string(e)});
            break;
        }
    }
    for (int f = 0; f < map.face_count(); ++f) {
        if (image_face(f) == f) {
            out.push_back({ErrorCode::FixedFace, "iota fixes a face"});
            break;
        }
    }
    if (!reverses) {
        out.push_back({ErrorCode::OrientationPreserving, "iota rho iota = rho"});
    }

    for (int v = 0; v < map.vertex_count(); ++v) {
        const int w = map.vertex_of(iota[map.vertices()[v][0]]);
        if (map.vertex_label(w) != partner_label(map.vertex_label(v))) {
            out.push_back({ErrorCode::LabelPairingBroken,
                           "vertex p" + std::to_string(map.vertex_label(v)) + " maps to p" +
                               std::to_string(map.vertex_label(w))});
            break;
        }
    }
    for (int f = 0; f < map.face_count(); ++f) {
        const int h = image_face(f);
        std::vector<Label> expected;
        for (Label p : map.face_punctures(f)) {
            expected.push_back(partner_label(p));
        }
        std::sort(expected.begin(), expected.end());
        if (expected != map.face_punctures(h)) {
            out.push_back({ErrorCode::LabelPairingBroken, "punctures are not paired by iota"});
            break;
        }
    }
    for (const auto& [label, f] : map.floating_marked()) {
        const int h = image_face(f);
        const auto& fl = map.floating_marked();
        const bool paired = std::find(fl.begin(), fl.end(), std::make_pair(partner_label(label), h)) != fl.end();
        if (!paired) {
            out.push_back({ErrorCode::LabelPairingBroken, "floating marked points are not paired"});
            break;
        }
    }
    return out;
}

DeckInvolution check_involution(const CombinatorialMap& map, std::vector<Dart> iota) {
    const auto violations = involution_violations(map, iota);
    if (!violations.empty()) {
        throw Error(violations.front().code, violations.front().detail);
    }
    DeckInvolution sigma;
    sigma.edge_image_.resize(map.edge_count());
    for (int e = 0; e < map.edge_count(); ++e) {
        sigma.edge_image_[e] = map.edge_of(iota[map.edge_darts(e)[0]]);
    }
    sigma.iota_ = std::move(iota);
    return sigma;
}

std::optional<DeckInvolution> extend_involution(const CombinatorialMap& map, Dart seed, Dart image) {
    const int n = map.dart_count();
    std::vector<Dart> iota(n, -1);
    std::vector<Dart> stack{seed};
    iota[seed] = image;
    while (!stack.empty()) {
        const Dart d = stack.back();
        stack.pop_back();
        const std::pair<Dart, Dart> steps[] = {{map.alpha(d), map.alpha(iota[d])},
                                               {map.rho(d), map.rho_inverse(iota[d])}};
        for (const auto& [x, y] : steps) {
            if (iota[x] < 0) {
                iota[x] = y;
                stack.push_back(x);
            } else if (iota[x] != y) {
                return std::nullopt;
            }
        }
    }
    if (std::find(iota.begin(), iota.end(), -1) != iota.end()) {
        return std::nullopt;
    }
    if (!involution_violations(map, iota).empty()) {
        return std::nullopt;
    }
    return check_involution(map, std::move(iota));
}

std::vector<DeckInvolution> find_deck_involutions(const CombinatorialMap& map) {
    std::vector<DeckInvolution> out;
    for (Dart t = 0; t < map.dart_count(); ++t) {
        if (auto sigma = extend_involution(map, 0, t)) {
            out.push_back(std::move(*sigma));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const DeckInvolution& a, const DeckInvolution& b) { return a.darts() < b.darts(); });
    return out;
}

bool is_sigma_invariant(const ArcSubsystem& sys, const DeckInvolution& sigma) {
    return std::all_of(sys.edges().begin(), sys.edges().end(),
                       [&](int e) { return sys.contains(sigma.edge_image(e)); });
}

std::vector<ArcSubsystem> sigma_filtration(const ArcSubsystem& sys, const DeckInvolution& sigma) {
    if (!is_sigma_invariant(sys, sigma)) {
        throw Error(ErrorCode::NotSigmaInvariant, "filtration needs a sigma-invariant system");
    }
    if (!is_valid(sys)) {
        throw Error(ErrorCode::NotValidSystem, "filtration needs a valid system");
    }
    std::vector<ArcSubsystem> chain;
    std::vector<int> current;
    std::set<int> used;
    for (int e : sys.edges()) {
        if (used.count(e) != 0) {
            continue;
        }
        const int image = sigma.edge_image(e);
        used.insert(e);
        used.insert(image);
        current.push_back(e);
        current.push_back(image);
        chain.emplace_back(sys.ambient_ptr(), current);
    }
    return chain;
}

SigmaMap equivariant_flip(const CombinatorialMap& map, const DeckInvolution& sigma, int edge) {
    const int partner = sigma.edge_image(edge);
    if (partner == edge) {
        throw Error(ErrorCode::SymmetryBroken, "edge " + std::to_string(edge) + " is fixed by sigma");
    }
    const CombinatorialMap once = flip(map, edge);
    if (!is_flippable(once, partner)) {
        throw Error(ErrorCode::NotFlippable, "sigma-image " + std::to_string(partner) + " of edge " +
                                                 std::to_string(edge) + " is not flippable after the first flip");
    }
    CombinatorialMap twice = flip(once, partner);
    // Flips keep dart ids, so the old table is the first candidate.
    if (involution_violations(twice, sigma.darts()).empty()) {
        DeckInvolution kept = check_involution(twice, sigma.darts());
        return {std::move(twice), std::move(kept)};
    }
    if (auto rederived = extend_involution(twice, 0, sigma(0))) {
        return {std::move(twice), std::move(*rederived)};
    }
    throw Error(ErrorCode::SymmetryBroken, "no deck involution after flipping edges " + std::to_string(edge) +
                                               " and " + std::to_string(partner));
}

}  // namespace arcspine
