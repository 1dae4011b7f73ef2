#include "arcspine/ribbon.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace arcspine {

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i != 0) {
            out << "; ";
        }
        out << to_string(violations[i].code) << " (" << violations[i].detail << ")";
    }
    return out.str();
}

bool is_permutation(const std::vector<Dart>& p, int n) {
    if (static_cast<int>(p.size()) != n) {
        return false;
    }
    std::vector<char> seen(n, 0);
    for (Dart d : p) {
        if (d < 0 || d >= n || seen[d]) {
            return false;
        }
        seen[d] = 1;
    }
    return true;
}

// Cycles of a permutation, each starting at its smallest element.
std::vector<std::vector<Dart>> cycles_of(const std::vector<Dart>& perm, std::vector<int>& owner) {
    const int n = static_cast<int>(perm.size());
    owner.assign(n, -1);
    std::vector<std::vector<Dart>> out;
    for (Dart d = 0; d < n; ++d) {
        if (owner[d] >= 0) {
            continue;
        }
        std::vector<Dart> cycle;
        Dart x = d;
        do {
            owner[x] = static_cast<int>(out.size());
            cycle.push_back(x);
            x = perm[x];
        } while (x != d);
        out.push_back(std::move(cycle));
    }
    return out;
}

std::vector<Dart> compose_phi(const std::vector<Dart>& alpha, const std::vector<Dart>& rho) {
    std::vector<Dart> phi(alpha.size());
    for (std::size_t d = 0; d < alpha.size(); ++d) {
        phi[d] = rho[alpha[d]];
    }
    return phi;
}

bool connected(const std::vector<Dart>& alpha, const std::vector<Dart>& rho) {
    const int n = static_cast<int>(alpha.size());
    if (n == 0) {
        return true;
    }
    std::vector<char> seen(n, 0);
    std::vector<Dart> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const Dart d = stack.back();
        stack.pop_back();
        for (Dart x : {alpha[d], rho[d]}) {
            if (!seen[x]) {
                seen[x] = 1;
                ++count;
                stack.push_back(x);
            }
        }
    }
    return count == n;
}

struct Analysis {
    std::vector<Violation> violations;
    std::vector<std::vector<Dart>> vertices, faces;
    std::vector<int> vertex_of, face_of;
    std::vector<Label> vertex_label;
    std::vector<std::vector<Label>> face_punctures;
    std::vector<std::pair<Label, int>> floating;
    int genus = 0, marked = 0, points = 0;
};

Analysis analyse(const MapData& data) {
    Analysis a;
    auto fail = [&](ErrorCode code, std::string detail) {
        a.violations.push_back({code, std::move(detail)});
    };
    const int n = data.darts;
    if (n <= 0 || n % 2 != 0) {
        fail(ErrorCode::InvalidPermutation, "dart count must be positive and even");
        return a;
    }
    if (!is_permutation(data.alpha, n)) {
        fail(ErrorCode::InvalidPermutation, "alpha is not a permutation of the darts");
    }
    if (!is_permutation(data.rho, n)) {
        fail(ErrorCode::InvalidPermutation, "rho is not a permutation of the darts");
    }
    if (!a.violations.empty()) {
        return a;
    }
    for (Dart d = 0; d < n; ++d) {
        if (data.alpha[d] == d) {
            fail(ErrorCode::InvalidInvolution, "alpha fixes dart " + std::to_string(d));
        } else if (data.alpha[data.alpha[d]] != d) {
            fail(ErrorCode::InvalidInvolution, "alpha is not an involution at dart " + std::to_string(d));
        }
    }
    if (!a.violations.empty()) {
        return a;
    }
    if (!connected(data.alpha, data.rho)) {
        fail(ErrorCode::Disconnected, "alpha and rho do not act transitively");
    }

    a.vertices = cycles_of(data.rho, a.vertex_of);
    a.faces = cycles_of(compose_phi(data.alpha, data.rho), a.face_of);
    const int V = static_cast<int>(a.vertices.size());
    const int F = static_cast<int>(a.faces.size());
    const int E = n / 2;

    auto in_range = [n](Dart d) { return d >= 0 && d < n; };

    // Marked points: vertex labels and floating points.
    a.vertex_label.assign(V, 0);
    std::vector<Label> marked_seen;
    for (const LabelAt& la : data.vertex_labels) {
        if (!in_range(la.rep)) {
            fail(ErrorCode::BadLabel, "vertex label rep out of range");
            continue;
        }
        const int v = a.vertex_of[la.rep];
        if (a.vertex_label[v] != 0) {
            fail(ErrorCode::DuplicateVertexLabel, "vertex at dart " + std::to_string(la.rep) +
                                                      " labelled twice");
            continue;
        }
        a.vertex_label[v] = la.label;
        marked_seen.push_back(la.label);
    }
    for (int v = 0; v < V; ++v) {
        if (a.vertex_label[v] == 0) {
            fail(ErrorCode::UnlabeledVertex, "vertex at dart " + std::to_string(a.vertices[v][0]) +
                                                 " carries no marked point");
        }
    }
    for (const LabelAt& la : data.floating) {
        if (!in_range(la.rep)) {
            fail(ErrorCode::BadLabel, "floating marked point rep out of range");
            continue;
        }
        a.floating.emplace_back(la.label, a.face_of[la.rep]);
        marked_seen.push_back(la.label);
    }
    std::sort(a.floating.begin(), a.floating.end());
    a.marked = data.marked.value_or(static_cast<int>(marked_seen.size()));
    {
        std::vector<int> count(a.marked + 1, 0);
        for (Label l : marked_seen) {
            if (l < 1 || l > a.marked) {
                fail(ErrorCode::BadLabel, "marked label p" + std::to_string(l) + " outside 1..m");
            } else if (++count[l] > 1) {
                fail(ErrorCode::DuplicateVertexLabel, "marked point p" + std::to_string(l) +
                                                          " used twice");
            }
        }
        for (Label l = 1; l <= a.marked; ++l) {
            if (count[l] == 0) {
                fail(ErrorCode::BadLabel, "marked point p" + std::to_string(l) + " missing");
            }
        }
    }

    // Punctures decorate faces.
    a.face_punctures.assign(F, {});
    a.points = data.points.value_or(a.marked + static_cast<int>(data.face_punctures.size()));
    {
        std::vector<int> count(std::max(a.points, a.marked) + 1, 0);
        for (const LabelAt& la : data.face_punctures) {
            if (!in_range(la.rep)) {
                fail(ErrorCode::BadLabel, "puncture rep out of range");
                continue;
            }
            if (la.label <= a.marked || la.label > a.points) {
                fail(ErrorCode::BadLabel, "puncture label p" + std::to_string(la.label) +
                                              " outside m+1..s");
                continue;
            }
            if (++count[la.label] > 1) {
                fail(ErrorCode::UnassignedPuncture, "puncture p" + std::to_string(la.label) +
                                                        " assigned to two faces");
                continue;
            }
            a.face_punctures[a.face_of[la.rep]].push_back(la.label);
        }
        for (Label l = a.marked + 1; l <= a.points; ++l) {
            if (count[l] == 0) {
                fail(ErrorCode::UnassignedPuncture, "puncture p" + std::to_string(l) +
                                                        " not assigned to a face");
            }
        }
        for (auto& p : a.face_punctures) {
            std::sort(p.begin(), p.end());
        }
    }

    const int chi = V - E + F;
    if (data.genus) {
        a.genus = *data.genus;
        if (chi != 2 - 2 * a.genus) {
            fail(ErrorCode::EulerMismatch, "V - E + F = " + std::to_string(chi) +
                                               " but genus " + std::to_string(a.genus) +
                                               " needs " + std::to_string(2 - 2 * a.genus));
        }
    } else if (chi > 2 || chi % 2 != 0) {
        fail(ErrorCode::EulerMismatch, "V - E + F = " + std::to_string(chi) +
                                           " is not the Euler characteristic of a closed oriented surface");
    } else {
        a.genus = (2 - chi) / 2;
    }
    return a;
}

}  // namespace

MapError::MapError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorCode::InvalidPermutation : violations.front().code,
            join_violations(violations)),
      violations_(std::move(violations)) {}

std::vector<Violation> validate_map(const MapData& data) { return analyse(data).violations; }

CombinatorialMap build_map(const MapData& data) {
    Analysis a = analyse(data);
    if (!a.violations.empty()) {
        throw MapError(std::move(a.violations));
    }
    CombinatorialMap m;
    const int n = data.darts;
    m.alpha_ = data.alpha;
    m.rho_ = data.rho;
    m.rho_inv_.assign(n, 0);
    for (Dart d = 0; d < n; ++d) {
        m.rho_inv_[m.rho_[d]] = d;
    }
    m.edge_of_.assign(n, -1);
    for (Dart d = 0; d < n; ++d) {
        if (m.edge_of_[d] < 0) {
            m.edge_of_[d] = m.edge_of_[m.alpha_[d]] = static_cast<int>(m.edges_.size());
            m.edges_.push_back({d, m.alpha_[d]});
        }
    }
    m.vertices_ = std::move(a.vertices);
    m.faces_ = std::move(a.faces);
    m.vertex_of_ = std::move(a.vertex_of);
    m.face_of_ = std::move(a.face_of);
    m.vertex_label_ = std::move(a.vertex_label);
    m.face_punctures_ = std::move(a.face_punctures);
    m.floating_ = std::move(a.floating);
    m.genus_ = a.genus;
    m.marked_ = a.marked;
    m.points_ = a.points;
    return m;
}

int CombinatorialMap::vertex_with_label(Label label) const {
    for (int v = 0; v < vertex_count(); ++v) {
        if (vertex_label_[v] == label) {
            return v;
        }
    }
    return -1;
}

std::vector<int> CombinatorialMap::boundary_word(int f) const {
    std::vector<int> word;
    word.reserve(faces_[f].size());
    for (Dart d : faces_[f]) {
        word.push_back(edge_of_[d]);
    }
    return word;
}

MapData CombinatorialMap::to_data() const {
    MapData data;
    data.darts = dart_count();
    data.alpha = alpha_;
    data.rho = rho_;
    for (int v = 0; v < vertex_count(); ++v) {
        data.vertex_labels.push_back({vertices_[v][0], vertex_label_[v]});
    }
    for (int f = 0; f < face_count(); ++f) {
        for (Label p : face_punctures_[f]) {
            data.face_punctures.push_back({faces_[f][0], p});
        }
    }
    for (const auto& [label, f] : floating_) {
        data.floating.push_back({faces_[f][0], label});
    }
    data.genus = genus_;
    data.marked = marked_;
    data.points = points_;
    return data;
}

CombinatorialMap map_from_faces(const FaceListData& in) {
    const int n = static_cast<int>(in.alpha.size());
    std::vector<Dart> phi(n, -1);
    for (const auto& face : in.faces) {
        for (std::size_t i = 0; i < face.size(); ++i) {
            const Dart d = face[i];
            if (d < 0 || d >= n || phi[d] >= 0) {
                throw MapError({{ErrorCode::InvalidPermutation, "face lists do not partition the darts"}});
            }
            phi[d] = face[(i + 1) % face.size()];
        }
    }
    if (std::find(phi.begin(), phi.end(), -1) != phi.end()) {
        throw MapError({{ErrorCode::InvalidPermutation, "dart missing from the face lists"}});
    }
    MapData data;
    data.darts = n;
    data.alpha = in.alpha;
    data.rho.resize(n);
    for (Dart d = 0; d < n; ++d) {
        data.rho[d] = phi[in.alpha[d]];
    }
    // One label per rho-cycle; the origins along a cycle must agree.
    std::vector<char> seen(n, 0);
    for (Dart d = 0; d < n; ++d) {
        if (seen[d]) {
            continue;
        }
        Dart x = d;
        do {
            seen[x] = 1;
            if (in.origin[x] != in.origin[d]) {
                throw MapError({{ErrorCode::DuplicateVertexLabel,
                                 "darts of one vertex carry different origin labels"}});
            }
            x = data.rho[x];
        } while (x != d);
        if (in.origin[d] != 0) {
            data.vertex_labels.push_back({d, in.origin[d]});
        }
    }
    for (std::size_t f = 0; f < in.faces.size(); ++f) {
        if (f < in.punctures.size()) {
            for (Label p : in.punctures[f]) {
                data.face_punctures.push_back({in.faces[f][0], p});
            }
        }
    }
    for (const auto& [label, f] : in.floating) {
        data.floating.push_back({in.faces[f][0], label});
    }
    data.genus = in.genus;
    data.marked = in.marked;
    data.points = in.points;
    return build_map(data);
}

CombinatorialMap rename_darts(const CombinatorialMap& map, std::span<const Dart> perm) {
    MapData data = map.to_data();
    const int n = map.dart_count();
    for (Dart d = 0; d < n; ++d) {
        data.alpha[perm[d]] = perm[map.alpha(d)];
        data.rho[perm[d]] = perm[map.rho(d)];
    }
    for (auto* list : {&data.vertex_labels, &data.face_punctures, &data.floating}) {
        for (LabelAt& la : *list) {
            la.rep = perm[la.rep];
        }
    }
    return build_map(data);
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

struct BfsCode {
    std::vector<int> code;
    std::vector<Dart> order;  // order[i] = dart numbered i
};

Label apply(const LabelPermutation& p, Label l) {
    return (p.empty() || l <= 0) ? l : p[l];
}

BfsCode bfs_code(const CombinatorialMap& map, Dart root, const LabelPermutation& relabel) {
    const int n = map.dart_count();
    BfsCode out;
    std::vector<int> number(n, -1);
    out.order.reserve(n);
    number[root] = 0;
    out.order.push_back(root);
    for (std::size_t head = 0; head < out.order.size(); ++head) {
        const Dart d = out.order[head];
        for (Dart x : {map.alpha(d), map.rho(d)}) {
            if (number[x] < 0) {
                number[x] = static_cast<int>(out.order.size());
                out.order.push_back(x);
            }
        }
    }
    std::vector<char> face_done(map.face_count(), 0);
    out.code.reserve(static_cast<std::size_t>(n) * 4 + 4);
    out.code.push_back(n);
    out.code.push_back(map.genus());
    for (Dart d : out.order) {
        out.code.push_back(number[map.alpha(d)]);
        out.code.push_back(number[map.rho(d)]);
        out.code.push_back(apply(relabel, map.origin_label(d)));
        const int f = map.face_of(d);
        if (face_done[f]) {
            out.code.push_back(-1);
            continue;
        }
        face_done[f] = 1;
        std::vector<Label> punct;
        for (Label p : map.face_punctures(f)) {
            punct.push_back(apply(relabel, p));
        }
        std::vector<Label> floating;
        for (const auto& [label, face] : map.floating_marked()) {
            if (face == f) {
                floating.push_back(apply(relabel, label));
            }
        }
        std::sort(punct.begin(), punct.end());
        std::sort(floating.begin(), floating.end());
        out.code.push_back(static_cast<int>(punct.size()));
        out.code.insert(out.code.end(), punct.begin(), punct.end());
        out.code.push_back(static_cast<int>(floating.size()));
        out.code.insert(out.code.end(), floating.begin(), floating.end());
    }
    return out;
}

std::string encode(const std::vector<int>& code) {
    std::string bytes;
    bytes.reserve(code.size() * 4);
    for (int v : code) {
        const auto u = static_cast<std::uint32_t>(v);
        bytes.push_back(static_cast<char>((u >> 24) & 0xff));
        bytes.push_back(static_cast<char>((u >> 16) & 0xff));
        bytes.push_back(static_cast<char>((u >> 8) & 0xff));
        bytes.push_back(static_cast<char>(u & 0xff));
    }
    return bytes;
}

}  // namespace

std::string canonical_form(const CombinatorialMap& map, std::span<const LabelPermutation> label_group) {
    static const LabelPermutation identity;
    std::vector<int> best;
    auto consider = [&](const LabelPermutation& relabel) {
        for (Dart r = 0; r < map.dart_count(); ++r) {
            BfsCode c = bfs_code(map, r, relabel);
            if (best.empty() || c.code < best) {
                best = std::move(c.code);
            }
        }
    };
    if (label_group.empty()) {
        consider(identity);
    } else {
        for (const LabelPermutation& p : label_group) {
            consider(p);
        }
    }
    return encode(best);
}

bool is_isomorphic(const CombinatorialMap& a, const CombinatorialMap& b,
                   std::span<const LabelPermutation> label_group) {
    if (a.dart_count() != b.dart_count() || a.genus() != b.genus()) {
        return false;
    }
    return canonical_form(a, label_group) == canonical_form(b, label_group);
}

std::vector<std::vector<Dart>> automorphisms(const CombinatorialMap& map) {
    static const LabelPermutation identity;
    const BfsCode base = bfs_code(map, 0, identity);
    std::vector<std::vector<Dart>> out;
    for (Dart r = 0; r < map.dart_count(); ++r) {
        const BfsCode c = bfs_code(map, r, identity);
        if (c.code != base.code) {
            continue;
        }
        std::vector<Dart> perm(map.dart_count());
        for (std::size_t i = 0; i < base.order.size(); ++i) {
            perm[base.order[i]] = c.order[i];
        }
        out.push_back(std::move(perm));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Regions

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

}  // namespace

RegionSplitter::RegionSplitter(const CombinatorialMap& map)
    : face_count_(map.face_count()),
      edge_faces_(map.edge_count()),
      vertex_edges_(map.vertex_count()),
      vertex_face_(map.vertex_count()),
      face_punctures_(map.face_count()),
      face_floating_(map.face_count(), 0) {
    for (int e = 0; e < map.edge_count(); ++e) {
        const auto& [d0, d1] = map.edge_darts(e);
        edge_faces_[e] = {map.face_of(d0), map.face_of(d1)};
    }
    for (int v = 0; v < map.vertex_count(); ++v) {
        for (Dart d : map.vertices()[v]) {
            vertex_edges_[v].push_back(map.edge_of(d));
        }
        vertex_face_[v] = map.face_of(map.vertices()[v][0]);
    }
    for (int f = 0; f < map.face_count(); ++f) {
        face_punctures_[f] = static_cast<int>(map.face_punctures(f).size());
    }
    for (const auto& [label, f] : map.floating_marked()) {
        ++face_floating_[f];
    }
}

Split RegionSplitter::split(std::span<const std::uint8_t> keep) const {
    DisjointSets sets(face_count_);
    const int E = edge_count();
    for (int e = 0; e < E; ++e) {
        if (!keep[e]) {
            sets.unite(edge_faces_[e][0], edge_faces_[e][1]);
        }
    }
    Split out;
    out.region_of_face.assign(face_count_, -1);
    std::vector<int> region_of_root(face_count_, -1);
    for (int f = 0; f < face_count_; ++f) {
        const int root = sets.find(f);
        if (region_of_root[root] < 0) {
            region_of_root[root] = static_cast<int>(out.regions.size());
            out.regions.emplace_back();
        }
        const int r = region_of_root[root];
        out.region_of_face[f] = r;
        out.regions[r].euler_char += 1;
        out.regions[r].punctures_inside += face_punctures_[f];
        out.regions[r].interior_marked += face_floating_[f];
    }
    for (int e = 0; e < E; ++e) {
        const int r0 = out.region_of_face[edge_faces_[e][0]];
        if (keep[e]) {
            out.regions[r0].boundary_corner_arcs += 1;
            out.regions[out.region_of_face[edge_faces_[e][1]]].boundary_corner_arcs += 1;
        } else {
            out.regions[r0].euler_char -= 1;
        }
    }
    out.region_of_vertex.assign(vertex_edges_.size(), -1);
    for (std::size_t v = 0; v < vertex_edges_.size(); ++v) {
        const bool interior = std::none_of(vertex_edges_[v].begin(), vertex_edges_[v].end(),
                                           [&](int e) { return keep[e] != 0; });
        if (interior) {
            const int r = out.region_of_face[vertex_face_[v]];
            out.region_of_vertex[v] = r;
            out.regions[r].euler_char += 1;
            out.regions[r].interior_marked += 1;
        }
    }
    return out;
}

Split RegionSplitter::split_mask(std::uint64_t mask) const {
    std::vector<std::uint8_t> keep(edge_count());
    for (int e = 0; e < edge_count(); ++e) {
        keep[e] = static_cast<std::uint8_t>((mask >> e) & 1u);
    }
    return split(keep);
}

EdgeDeletion delete_edges(const CombinatorialMap& map, std::span<const int> removed) {
    const int E = map.edge_count();
    std::vector<std::uint8_t> keep(E, 1);
    for (int e : removed) {
        if (e < 0 || e >= E) {
            throw Error(ErrorCode::EmptySystem, "edge id " + std::to_string(e) + " out of range");
        }
        keep[e] = 0;
    }
    EdgeDeletion out;
    for (int e = 0; e < E; ++e) {
        if (keep[e]) {
            out.kept_edges.push_back(e);
        }
    }
    if (out.kept_edges.empty()) {
        throw Error(ErrorCode::EmptySystem, "all edges deleted");
    }
    const RegionSplitter splitter(map);
    Split split = splitter.split(keep);
    out.regions = split.regions;
    out.region_of_face = split.region_of_face;
    for (int v = 0; v < map.vertex_count(); ++v) {
        if (split.region_of_vertex[v] >= 0) {
            out.floating.emplace_back(map.vertex_label(v), split.region_of_vertex[v]);
        }
    }
    for (const auto& [label, f] : map.floating_marked()) {
        out.floating.emplace_back(label, split.region_of_face[f]);
    }
    std::sort(out.floating.begin(), out.floating.end());

    const bool cellular = std::all_of(out.regions.begin(), out.regions.end(),
                                      [](const Region& r) { return r.euler_char == 1; });
    if (!cellular) {
        return out;
    }

    // Kept darts renumbered in increasing order; rho skips deleted darts.
    const int n = map.dart_count();
    std::vector<int> renumber(n, -1);
    int next = 0;
    for (Dart d = 0; d < n; ++d) {
        if (keep[map.edge_of(d)]) {
            renumber[d] = next++;
        }
    }
    MapData data;
    data.darts = next;
    data.alpha.resize(next);
    data.rho.resize(next);
    for (Dart d = 0; d < n; ++d) {
        if (renumber[d] < 0) {
            continue;
        }
        data.alpha[renumber[d]] = renumber[map.alpha(d)];
        Dart x = map.rho(d);
        while (renumber[x] < 0) {
            x = map.rho(x);
        }
        data.rho[renumber[d]] = renumber[x];
    }
    std::vector<Dart> region_rep(out.regions.size(), -1);
    for (Dart d = 0; d < n; ++d) {
        if (renumber[d] >= 0 && region_rep[split.region_of_face[map.face_of(d)]] < 0) {
            region_rep[split.region_of_face[map.face_of(d)]] = renumber[d];
        }
    }
    for (int v = 0; v < map.vertex_count(); ++v) {
        if (split.region_of_vertex[v] >= 0) {
            continue;
        }
        for (Dart d : map.vertices()[v]) {
            if (renumber[d] >= 0) {
                data.vertex_labels.push_back({renumber[d], map.vertex_label(v)});
                break;
            }
        }
    }
    for (int f = 0; f < map.face_count(); ++f) {
        for (Label p : map.face_punctures(f)) {
            data.face_punctures.push_back({region_rep[split.region_of_face[f]], p});
        }
    }
    for (const auto& [label, r] : out.floating) {
        data.floating.push_back({region_rep[r], label});
    }
    data.genus = map.genus();
    data.marked = map.marked_count();
    data.points = map.point_count();
    out.reduced = build_map(data);
    return out;
}

// ---------------------------------------------------------------------------
// Flips

bool is_flippable(const CombinatorialMap& map, int edge) {
    if (edge < 0 || edge >= map.edge_count()) {
        return false;
    }
    const auto& [d, dp] = map.edge_darts(edge);
    const int f1 = map.face_of(d);
    const int f2 = map.face_of(dp);
    if (f1 == f2 || map.faces()[f1].size() != 3 || map.faces()[f2].size() != 3) {
        return false;
    }
    if (!map.face_punctures(f1).empty() || !map.face_punctures(f2).empty()) {
        return false;
    }
    for (const auto& [label, f] : map.floating_marked()) {
        if (f == f1 || f == f2) {
            return false;
        }
    }
    return true;
}

CombinatorialMap flip(const CombinatorialMap& map, int edge) {
    if (!is_flippable(map, edge)) {
        throw Error(ErrorCode::NotFlippable,
                    "edge " + std::to_string(edge) + " does not separate two distinct triangles");
    }
    const auto& [d, dp] = map.edge_darts(edge);
    // Quadrilateral a (v->w), b (w->u), c (u->x), e (x->v); the new diagonal
    // joins w and x.
    const Dart a = map.phi(d);
    const Dart b = map.phi(a);
    const Dart c = map.phi(dp);
    const Dart e = map.phi(c);

    FaceListData data;
    data.alpha = map.alpha();
    data.origin.resize(map.dart_count());
    for (Dart x = 0; x < map.dart_count(); ++x) {
        data.origin[x] = map.origin_label(x);
    }
    data.origin[d] = map.origin_label(e);
    data.origin[dp] = map.origin_label(b);
    const int f1 = map.face_of(d);
    const int f2 = map.face_of(dp);
    for (int f = 0; f < map.face_count(); ++f) {
        if (f == f1) {
            data.faces.push_back({b, c, d});
        } else if (f == f2) {
            data.faces.push_back({e, a, dp});
        } else {
            data.faces.push_back(map.faces()[f]);
        }
        data.punctures.push_back(map.face_punctures(f));
    }
    for (const auto& [label, f] : map.floating_marked()) {
        data.floating.emplace_back(label, f);
    }
    data.genus = map.genus();
    data.marked = map.marked_count();
    data.points = map.point_count();
    return map_from_faces(data);
}

}  // namespace arcspine
