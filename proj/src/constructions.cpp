#include "arcspine/constructions.hpp"

#include <algorithm>
#include <sstream>

namespace arcspine {

namespace {

// A directed side of a face; dart 2e is edge e traversed forward, 2e+1 backward.
struct Side {
    int edge = 0;
    bool forward = true;
    Label origin = 0;

    Dart dart() const { return 2 * edge + (forward ? 0 : 1); }
};

struct HalfFace {
    std::vector<Side> sides;
    std::vector<Label> punctures;
    std::vector<Label> floating;
};

// Faces of the half P. Interior edges are numbered so that the t-th one gets
// id first_interior + 2t and its mirror the next id.
class HalfSurface {
public:
    HalfSurface(int polygon_sides, int first_interior) : next_edge_(first_interior) {
        HalfFace face;
        for (int i = 0; i < polygon_sides; ++i) {
            face.sides.push_back({i, true, (i % 2 == 0) ? 1 : 2});
        }
        faces_.push_back(std::move(face));
    }

    HalfFace& face(int f) { return faces_[f]; }
    const std::vector<HalfFace>& faces() const { return faces_; }
    int edges_end() const { return next_edge_; }

    /// New edge from corner i of face f to the floating point q inside it.
    /// Returns the corner index of q in the face.
    int add_pendant(int f, int corner, Label q) {
        HalfFace& face = faces_[f];
        auto it = std::find(face.floating.begin(), face.floating.end(), q);
        if (it == face.floating.end()) {
            throw Error(ErrorCode::ConstructionFailed, "pendant target is not inside the face");
        }
        face.floating.erase(it);
        const int e = allocate();
        const Label u = face.sides[corner].origin;
        face.sides.insert(face.sides.begin() + corner, {{e, true, u}, {e, false, q}});
        return corner + 1;
    }

    /// Loop at corner i of face f cutting off a once-punctured monogon
    /// around puncture x. Returns the monogon's face index.
    int add_loop(int f, int corner, Label x) {
        HalfFace& face = faces_[f];
        auto it = std::find(face.punctures.begin(), face.punctures.end(), x);
        if (it == face.punctures.end()) {
            throw Error(ErrorCode::ConstructionFailed, "loop target puncture is not inside the face");
        }
        face.punctures.erase(it);
        const int e = allocate();
        const Label u = face.sides[corner].origin;
        face.sides.insert(face.sides.begin() + corner, Side{e, false, u});
        HalfFace monogon;
        monogon.sides.push_back({e, true, u});
        monogon.punctures.push_back(x);
        faces_.push_back(std::move(monogon));
        return static_cast<int>(faces_.size()) - 1;
    }

    /// Diagonal from corner i to corner j (i < j) of an undecorated face; the
    /// piece containing sides i..j-1 becomes a new face.
    void add_diagonal(int f, int i, int j) {
        HalfFace& face = faces_[f];
        if (!face.punctures.empty() || !face.floating.empty() || i >= j) {
            throw Error(ErrorCode::ConstructionFailed, "diagonal needs an undecorated face");
        }
        const int e = allocate();
        HalfFace cut;
        cut.sides.assign(face.sides.begin() + i, face.sides.begin() + j);
        cut.sides.push_back({e, false, face.sides[j].origin});
        std::vector<Side> rest(face.sides.begin() + j, face.sides.end());
        rest.insert(rest.end(), face.sides.begin(), face.sides.begin() + i);
        rest.push_back({e, true, face.sides[i].origin});
        face.sides = std::move(rest);
        faces_.push_back(std::move(cut));
    }

private:
    int allocate() {
        const int e = next_edge_;
        next_edge_ += 2;
        return e;
    }

    std::vector<HalfFace> faces_;
    int next_edge_;
};

int mirror_edge(int e) { return e ^ 1; }

// Glues P and its mirror into a map on F_g. The mirror of side s_i of a face
// is the reverse of sigma(s_i); it leaves the partner of s_{i+1}'s origin.
CombinatorialMap assemble(const HalfSurface& half, const CoverContext& ctx) {
    const int edges = half.edges_end();
    FaceListData data;
    data.alpha.resize(2 * edges);
    data.origin.assign(2 * edges, 0);
    for (Dart d = 0; d < 2 * edges; ++d) {
        data.alpha[d] = d ^ 1;
    }
    for (const HalfFace& face : half.faces()) {
        std::vector<Dart> darts;
        for (const Side& s : face.sides) {
            darts.push_back(s.dart());
            data.origin[s.dart()] = s.origin;
        }
        data.faces.push_back(std::move(darts));
        data.punctures.push_back(face.punctures);
    }
    for (const HalfFace& face : half.faces()) {
        const std::size_t r = face.sides.size();
        std::vector<Dart> darts;
        for (std::size_t k = r; k-- > 0;) {
            const Side& s = face.sides[k];
            const Dart mirrored = 2 * mirror_edge(s.edge) + (s.forward ? 1 : 0);
            darts.push_back(mirrored);
            data.origin[mirrored] = partner_label(face.sides[(k + 1) % r].origin);
        }
        data.faces.push_back(std::move(darts));
        std::vector<Label> punctures;
        for (Label p : face.punctures) {
            punctures.push_back(partner_label(p));
        }
        data.punctures.push_back(std::move(punctures));
    }
    data.genus = ctx.g;
    data.marked = ctx.m;
    data.points = ctx.s;
    return map_from_faces(data);
}

std::vector<int> range_of_edges(int begin, int end) {
    std::vector<int> out;
    for (int e = begin; e < end; ++e) {
        out.push_back(e);
    }
    return out;
}

}  // namespace

ConstructionBundle build_constructions(const CoverContext& ctx) {
    const int polygon = 2 * ctx.g + 2;
    HalfSurface half(polygon, polygon);

    // Interior points of P: odd labels; sigma(P) receives the even partners.
    HalfFace& main = half.face(0);
    for (Label q = 3; q <= ctx.m; q += 2) {
        main.floating.push_back(q);
    }
    for (Label x = ctx.m + 1; x <= ctx.s; x += 2) {
        main.punctures.push_back(x);
    }

    // B_min: a path p1 - p3 - p5 - ... through the interior marked points,
    // then loops at p1 around every puncture of P but one.
    int corner = 0;
    for (Label q = 3; q <= ctx.m; q += 2) {
        corner = half.add_pendant(0, corner, q);
    }
    const std::vector<Label> punctures = half.face(0).punctures;
    for (std::size_t i = 0; i + 1 < punctures.size(); ++i) {
        half.add_loop(0, 0, punctures[i]);
    }
    const int bmin_end = half.edges_end();

    // B_max: cut off the last puncture, then triangulate by ears at corner 0.
    if (!half.face(0).punctures.empty()) {
        half.add_loop(0, 0, half.face(0).punctures.front());
    }
    for (int f = 0; f < static_cast<int>(half.faces().size()); ++f) {
        while (half.faces()[f].punctures.empty() && half.faces()[f].sides.size() > 3) {
            half.add_diagonal(f, 0, 2);
        }
    }

    auto ambient = std::make_shared<const CombinatorialMap>(assemble(half, ctx));
    std::vector<Dart> iota(ambient->dart_count());
    for (Dart d = 0; d < ambient->dart_count(); ++d) {
        iota[d] = 2 * mirror_edge(d / 2) + d % 2;
    }
    DeckInvolution sigma;
    try {
        sigma = check_involution(*ambient, std::move(iota));
    } catch (const Error& e) {
        throw Error(ErrorCode::ConstructionFailed, std::string("mirror map is not a deck involution: ") + e.what());
    }

    std::vector<ArcSubsystem> chain;
    for (int end = bmin_end; end <= half.edges_end(); end += 2) {
        chain.emplace_back(ambient, range_of_edges(0, end));
    }
    return ConstructionBundle{ctx,
                              ambient,
                              std::move(sigma),
                              ArcSubsystem(ambient, range_of_edges(0, polygon)),
                              ArcSubsystem(ambient, range_of_edges(0, bmin_end)),
                              std::move(chain)};
}

ConstructionBundle canonical_sigma_system(const CoverContext& ctx) { return build_constructions(ctx); }

ConstructionBundle maximal_sigma_system(const CoverContext& ctx) { return build_constructions(ctx); }

ArcSubsystem minimal_sigma_filling(const CoverContext& ctx) {
    return build_constructions(ctx).subset_Bmin;
}

std::vector<ArcSubsystem> maximal_chain(const CoverContext& ctx) {
    ConstructionBundle bundle = build_constructions(ctx);
    for (std::size_t i = 0; i < bundle.chain.size(); ++i) {
        const ArcSubsystem& member = bundle.chain[i];
        if (!is_valid(member) || !fills_up(member) || !is_sigma_invariant(member, bundle.sigma)) {
            throw Error(ErrorCode::ChainBroken,
                        "chain member " + std::to_string(i) + " is not a sigma-invariant filling system");
        }
        if (i > 0 && member.size() != bundle.chain[i - 1].size() + 2) {
            throw Error(ErrorCode::ChainBroken, "consecutive chain members differ by more than one orbit");
        }
    }
    return std::move(bundle.chain);
}

std::vector<CertificateItem> certify(const ConstructionBundle& b) {
    const CoverContext& ctx = b.ctx;
    std::vector<CertificateItem> out;
    auto check = [&](std::string name, bool pass, std::string detail = {}) {
        out.push_back({std::move(name), pass, std::move(detail)});
    };
    auto count = [](auto value) { return std::to_string(value); };

    const CombinatorialMap& map = *b.ambient;
    const int expected_edges =
        (2 * ctx.g + 2) + 2 * (2 * ctx.g - 1) + 3 * (ctx.m - 2) + 2 * (ctx.s - ctx.m);
    check("ambient genus", map.genus() == ctx.g && map.euler_characteristic() == 2 - 2 * ctx.g,
          "chi = " + count(map.euler_characteristic()));
    check("B has 2g+2 arcs", b.subset_B.size() == 2 * ctx.g + 2, count(b.subset_B.size()));
    check("B is valid", is_valid(b.subset_B));
    check("B is sigma-invariant", is_sigma_invariant(b.subset_B, b.sigma));
    {
        const auto regions = split_components(b.subset_B);
        bool polygons = regions.size() == 2;
        for (const Region& r : regions) {
            polygons = polygons && r.euler_char == 1 && r.boundary_corner_arcs == 2 * ctx.g + 2 &&
                       r.punctures_inside == (ctx.s - ctx.m) / 2 &&
                       r.interior_marked == (ctx.m - 2) / 2;
        }
        check("B splits into two (2g+2)-gons", polygons, count(regions.size()) + " regions");
        // sigma swaps the two regions: the faces of region 0 go to region 1.
        const Split split = RegionSplitter(map).split(b.subset_B.membership());
        bool swapped = split.regions.size() == 2;
        for (int f = 0; f < map.face_count() && swapped; ++f) {
            const Dart d = map.faces()[f][0];
            const int image = map.face_of(map.alpha(b.sigma(d)));
            swapped = split.region_of_face[image] != split.region_of_face[f];
        }
        check("sigma swaps the two polygons of B", swapped);
    }

    const ArcSubsystem full = ArcSubsystem::full(b.ambient);
    check("B_max arc count", full.size() == expected_edges,
          count(full.size()) + " vs " + count(expected_edges));
    check("B_max rank = 6g-7+2s+m", full.rank() == rank_bounds(ctx, true).max_rank);
    check("B_max is valid", is_valid(full));
    check("B_max is maximal", is_valid(full) && is_maximal(full));
    check("B_max is sigma-invariant", is_sigma_invariant(full, b.sigma));
    {
        int triangles = 0;
        int monogons = 0;
        for (const Region& r : split_components(full)) {
            triangles += (r.boundary_corner_arcs == 3 && r.punctures_inside == 0);
            monogons += (r.boundary_corner_arcs == 1 && r.punctures_inside == 1);
        }
        check("B_max has s-m punctured monogons", monogons == ctx.s - ctx.m, count(monogons));
        check("B_max face count", triangles + monogons == map.face_count(),
              count(triangles) + " triangles");
    }

    const RankBounds bound = rank_bounds(ctx, true);
    const int expected_min = (2 * ctx.g + 2) + (ctx.m - 2) + (ctx.m < ctx.s ? (ctx.s - ctx.m) - 2 : 0);
    check("B_min arc count", b.subset_Bmin.size() == expected_min,
          count(b.subset_Bmin.size()) + " vs " + count(expected_min));
    check("B_min rank attains the sigma lower bound", b.subset_Bmin.rank() == bound.min_filling_rank,
          count(b.subset_Bmin.rank()) + " vs " + count(bound.min_filling_rank));
    check("B_min is valid", is_valid(b.subset_Bmin));
    check("B_min fills", is_valid(b.subset_Bmin) && fills_up(b.subset_Bmin));
    check("B_min is sigma-invariant", is_sigma_invariant(b.subset_Bmin, b.sigma));
    check("B is contained in B_min",
          std::includes(b.subset_Bmin.edges().begin(), b.subset_Bmin.edges().end(),
                        b.subset_B.edges().begin(), b.subset_B.edges().end()));

    bool chain_ok = !b.chain.empty() && b.chain.front() == b.subset_Bmin &&
                    b.chain.back().size() == full.size();
    for (std::size_t i = 0; i < b.chain.size() && chain_ok; ++i) {
        const ArcSubsystem& member = b.chain[i];
        chain_ok = is_valid(member) && fills_up(member) && is_sigma_invariant(member, b.sigma) &&
                   member.size() % 2 == 0;
        if (i > 0) {
            chain_ok = chain_ok && member.size() == b.chain[i - 1].size() + 2 &&
                       std::includes(member.edges().begin(), member.edges().end(),
                                     b.chain[i - 1].edges().begin(), b.chain[i - 1].edges().end());
        }
    }
    check("chain members are sigma-invariant filling systems growing by one orbit", chain_ok);
    const int inclusions = static_cast<int>(b.chain.size()) - 1;
    check("chain length = spine dimension", inclusions == spine_dimension(ctx),
          count(inclusions) + " vs " + count(spine_dimension(ctx)));
    check("rank(B_max) - rank(B_min) = 2 spine_dim",
          full.rank() - b.subset_Bmin.rank() == 2 * spine_dimension(ctx));
    return out;
}

}  // namespace arcspine
