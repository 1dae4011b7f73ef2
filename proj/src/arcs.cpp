#include "arcspine/arcs.hpp"

#include <algorithm>
#include <bit>

namespace arcspine {

ArcSubsystem::ArcSubsystem(std::shared_ptr<const CombinatorialMap> ambient, std::vector<int> edges)
    : ambient_(std::move(ambient)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    if (edges_.empty()) {
        throw Error(ErrorCode::EmptySystem, "an arc system needs at least one arc");
    }
    if (edges_.front() < 0 || edges_.back() >= ambient_->edge_count()) {
        throw Error(ErrorCode::EmptySystem, "edge id outside the ambient map");
    }
}

ArcSubsystem ArcSubsystem::full(std::shared_ptr<const CombinatorialMap> ambient) {
    std::vector<int> edges(ambient->edge_count());
    for (int e = 0; e < ambient->edge_count(); ++e) {
        edges[e] = e;
    }
    return ArcSubsystem(std::move(ambient), std::move(edges));
}

ArcSubsystem ArcSubsystem::from_mask(std::shared_ptr<const CombinatorialMap> ambient, EdgeMask mask) {
    std::vector<int> edges;
    for (int e = 0; e < 64; ++e) {
        if ((mask >> e) & 1u) {
            edges.push_back(e);
        }
    }
    return ArcSubsystem(std::move(ambient), std::move(edges));
}

bool ArcSubsystem::contains(int edge) const {
    return std::binary_search(edges_.begin(), edges_.end(), edge);
}

std::vector<std::uint8_t> ArcSubsystem::membership() const {
    std::vector<std::uint8_t> keep(ambient_->edge_count(), 0);
    for (int e : edges_) {
        keep[e] = 1;
    }
    return keep;
}

EdgeMask ArcSubsystem::mask() const {
    if (ambient_->edge_count() > 64) {
        throw Error(ErrorCode::BudgetExceeded, "edge masks hold at most 64 edges");
    }
    EdgeMask m = 0;
    for (int e : edges_) {
        m |= EdgeMask{1} << e;
    }
    return m;
}

std::vector<Region> split_components(const ArcSubsystem& sys) {
    return RegionSplitter(sys.ambient()).split(sys.membership()).regions;
}

int doubled_euler(const Region& r) {
    const int reduced = r.euler_char - r.punctures_inside - r.interior_marked;
    return 2 * reduced - r.boundary_corner_arcs;
}

bool region_admissible(const Region& r) { return doubled_euler(r) < 0; }

bool region_fills(const Region& r) {
    return r.euler_char == 1 && r.interior_marked == 0 && r.punctures_inside <= 1;
}

bool region_is_maximal_piece(const Region& r) {
    if (r.euler_char != 1 || r.interior_marked != 0) {
        return false;
    }
    return (r.boundary_corner_arcs == 3 && r.punctures_inside == 0) ||
           (r.boundary_corner_arcs == 1 && r.punctures_inside == 1);
}

namespace {

ArcOracle::Verdict verdict_of(const std::vector<Region>& regions) {
    ArcOracle::Verdict v;
    v.valid = std::all_of(regions.begin(), regions.end(), region_admissible);
    if (v.valid) {
        v.fills = std::all_of(regions.begin(), regions.end(), region_fills);
        v.maximal = std::all_of(regions.begin(), regions.end(), region_is_maximal_piece);
    }
    return v;
}

}  // namespace

bool is_valid(const ArcSubsystem& sys) { return verdict_of(split_components(sys)).valid; }

bool fills_up(const ArcSubsystem& sys) {
    const auto v = verdict_of(split_components(sys));
    if (!v.valid) {
        throw Error(ErrorCode::NotValidSystem, "fills_up needs a valid arc system");
    }
    return v.fills;
}

bool is_maximal(const ArcSubsystem& sys) {
    const auto v = verdict_of(split_components(sys));
    if (!v.valid) {
        throw Error(ErrorCode::NotValidSystem, "is_maximal needs a valid arc system");
    }
    return v.maximal;
}

ArcOracle::ArcOracle(const CombinatorialMap& ambient)
    : splitter_(ambient), edge_count_(ambient.edge_count()) {
    if (edge_count_ > 64) {
        throw Error(ErrorCode::BudgetExceeded, "mask oracle supports at most 64 edges");
    }
}

ArcOracle::Verdict ArcOracle::classify(EdgeMask mask) const {
    if (mask == 0) {
        return {};
    }
    return verdict_of(splitter_.split_mask(mask).regions);
}

std::vector<Region> ArcOracle::regions(EdgeMask mask) const {
    return splitter_.split_mask(mask).regions;
}

EdgeMask ArcOracle::full_mask() const {
    return edge_count_ == 64 ? ~EdgeMask{0} : (EdgeMask{1} << edge_count_) - 1;
}

}  // namespace arcspine
