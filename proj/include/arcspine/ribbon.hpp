#pragma once

// Combinatorial maps (rotation systems) on the oriented double cover.
//
// Darts are 0..2E-1. `alpha` pairs the two darts of an edge, `rho` rotates
// counterclockwise around a vertex, and faces are the cycles of
// phi = rho o alpha, i.e. phi(d) = rho(alpha(d)). A dart leaves its origin
// vertex; inside a face cycle consecutive darts are consecutive boundary
// sides. Vertices are marked points (labels 1..m), punctures (labels m+1..s)
// decorate faces.

#include "arcspine/error.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arcspine {

using Dart = int;
using Label = int;

struct LabelAt {
    Dart rep = 0;
    Label label = 0;
    friend bool operator==(const LabelAt&, const LabelAt&) = default;
};

/// Raw, unvalidated map description (the map file content).
struct MapData {
    int darts = 0;
    std::vector<Dart> alpha;
    std::vector<Dart> rho;
    std::vector<LabelAt> vertex_labels;   // rep is any dart of the vertex
    std::vector<LabelAt> face_punctures;  // rep is any dart of the face
    std::vector<LabelAt> floating;        // marked points inside a face
    std::optional<int> genus;             // inferred from Euler characteristic if absent
    std::optional<int> marked;            // m; inferred from the labels if absent
    std::optional<int> points;            // s; inferred from the labels if absent
};

struct Violation {
    ErrorCode code;
    std::string detail;
};

class MapError : public Error {
public:
    explicit MapError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

class CombinatorialMap;

/// All invariant violations of `data` (empty when it describes a valid map).
std::vector<Violation> validate_map(const MapData& data);

/// Validated construction. Throws MapError listing every violation.
CombinatorialMap build_map(const MapData& data);

/// Immutable validated map.
class CombinatorialMap {
public:
    int dart_count() const { return static_cast<int>(alpha_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
    int genus() const { return genus_; }
    int marked_count() const { return marked_; }
    int point_count() const { return points_; }

    Dart alpha(Dart d) const { return alpha_[d]; }
    Dart rho(Dart d) const { return rho_[d]; }
    Dart rho_inverse(Dart d) const { return rho_inv_[d]; }
    Dart phi(Dart d) const { return rho_[alpha_[d]]; }
    const std::vector<Dart>& alpha() const { return alpha_; }
    const std::vector<Dart>& rho() const { return rho_; }

    int edge_of(Dart d) const { return edge_of_[d]; }
    int vertex_of(Dart d) const { return vertex_of_[d]; }
    int face_of(Dart d) const { return face_of_[d]; }

    /// Darts of edge e; first is the smaller dart.
    const std::array<Dart, 2>& edge_darts(int e) const { return edges_[e]; }
    /// rho-cycles, each starting at its smallest dart, ordered by that dart.
    const std::vector<std::vector<Dart>>& vertices() const { return vertices_; }
    /// phi-cycles (boundary words), same ordering convention.
    const std::vector<std::vector<Dart>>& faces() const { return faces_; }

    Label vertex_label(int v) const { return vertex_label_[v]; }
    Label origin_label(Dart d) const { return vertex_label_[vertex_of_[d]]; }
    const std::vector<Label>& face_punctures(int f) const { return face_punctures_[f]; }
    /// Floating marked points as (label, face).
    const std::vector<std::pair<Label, int>>& floating_marked() const { return floating_; }
    /// Vertex carrying a label, or -1.
    int vertex_with_label(Label label) const;

    /// Number of Delta-corners of face f (every corner is a marked vertex).
    int face_corner_count(int f) const { return static_cast<int>(faces_[f].size()); }
    /// Edge ids along the boundary of face f.
    std::vector<int> boundary_word(int f) const;

    MapData to_data() const;

    friend bool operator==(const CombinatorialMap& a, const CombinatorialMap& b) {
        return a.alpha_ == b.alpha_ && a.rho_ == b.rho_ && a.vertex_label_ == b.vertex_label_ &&
               a.face_punctures_ == b.face_punctures_ && a.floating_ == b.floating_ &&
               a.genus_ == b.genus_ && a.marked_ == b.marked_ && a.points_ == b.points_;
    }

private:
    friend CombinatorialMap build_map(const MapData& data);
    CombinatorialMap() = default;

    std::vector<Dart> alpha_;
    std::vector<Dart> rho_;
    std::vector<Dart> rho_inv_;
    std::vector<int> edge_of_;
    std::vector<int> vertex_of_;
    std::vector<int> face_of_;
    std::vector<std::array<Dart, 2>> edges_;
    std::vector<std::vector<Dart>> vertices_;
    std::vector<std::vector<Dart>> faces_;
    std::vector<Label> vertex_label_;
    std::vector<std::vector<Label>> face_punctures_;
    std::vector<std::pair<Label, int>> floating_;
    int genus_ = 0;
    int marked_ = 0;
    int points_ = 0;
};

/// Face-list description: each face is a cycle of darts in phi order,
/// `origin[d]` labels the vertex a dart leaves, `punctures[f]` decorates
/// face f. rho is recovered as rho(d) = phi(alpha(d)).
struct FaceListData {
    std::vector<std::vector<Dart>> faces;
    std::vector<Dart> alpha;
    std::vector<Label> origin;
    std::vector<std::vector<Label>> punctures;
    std::vector<std::pair<Label, int>> floating;  // (label, face index)
    std::optional<int> genus;
    std::optional<int> marked;
    std::optional<int> points;
};

CombinatorialMap map_from_faces(const FaceListData& data);

/// The map with every dart d renamed to perm[d].
CombinatorialMap rename_darts(const CombinatorialMap& map, std::span<const Dart> perm);

/// Permutation of labels 1..s; entry 0 is unused. An empty vector is the identity.
using LabelPermutation = std::vector<Label>;

/// Canonical byte string: minimum over roots (and over the label group) of
/// the breadth-first code of the map. Equal iff the maps are isomorphic by
/// an orientation-preserving dart bijection respecting decorations up to
/// the group.
std::string canonical_form(const CombinatorialMap& map,
                           std::span<const LabelPermutation> label_group = {});
bool is_isomorphic(const CombinatorialMap& a, const CombinatorialMap& b,
                   std::span<const LabelPermutation> label_group = {});

/// Orientation-preserving automorphisms (as dart permutations) fixing all labels.
std::vector<std::vector<Dart>> automorphisms(const CombinatorialMap& map);

/// A complementary region of an edge subset. euler_char is that of the
/// closed-up component (punctures and interior marked points filled in).
struct Region {
    int euler_char = 0;
    int boundary_corner_arcs = 0;  // a = number of components of dB - Delta
    int punctures_inside = 0;
    int interior_marked = 0;

    friend auto operator<=>(const Region&, const Region&) = default;
};

struct Split {
    std::vector<Region> regions;
    std::vector<int> region_of_face;    // ambient face -> region
    std::vector<int> region_of_vertex;  // ambient vertex -> region if interior, else -1
};

/// Precomputed incidence for repeatedly splitting one map along edge subsets.
class RegionSplitter {
public:
    explicit RegionSplitter(const CombinatorialMap& map);

    /// keep[e] != 0 selects edge e.
    Split split(std::span<const std::uint8_t> keep) const;
    Split split_mask(std::uint64_t mask) const;

    int edge_count() const { return static_cast<int>(edge_faces_.size()); }

private:
    int face_count_ = 0;
    std::vector<std::array<int, 2>> edge_faces_;
    std::vector<std::vector<int>> vertex_edges_;
    std::vector<int> vertex_face_;
    std::vector<int> face_punctures_;
    std::vector<int> face_floating_;
};

struct EdgeDeletion {
    /// Present when every region is a disk, so the kept edges still form a
    /// cellular map; edge ids are renumbered in increasing order of the kept ids.
    std::optional<CombinatorialMap> reduced;
    std::vector<int> kept_edges;
    std::vector<Region> regions;
    std::vector<int> region_of_face;
    /// Marked points left without incident edges, with their region.
    std::vector<std::pair<Label, int>> floating;
};

/// Deletes `removed` edges. Throws Error(EmptySystem) if nothing remains.
EdgeDeletion delete_edges(const CombinatorialMap& map, std::span<const int> removed);

/// Diagonal exchange of an edge between two distinct unpunctured triangles.
/// The edge keeps its dart ids. Throws Error(NotFlippable).
CombinatorialMap flip(const CombinatorialMap& map, int edge);
bool is_flippable(const CombinatorialMap& map, int edge);

}  // namespace arcspine
