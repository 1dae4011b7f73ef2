#pragma once

// Arc systems as edge subsets of an ambient map. Distinct edges meet only at
// vertices, so the disjointness condition holds by construction and only
// the doubled Euler characteristic of each complementary region decides
// validity.

#include "arcspine/ribbon.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace arcspine {

using EdgeMask = std::uint64_t;

class ArcSubsystem {
public:
    /// Throws Error(EmptySystem) when `edges` is empty or out of range.
    ArcSubsystem(std::shared_ptr<const CombinatorialMap> ambient, std::vector<int> edges);

    static ArcSubsystem full(std::shared_ptr<const CombinatorialMap> ambient);
    static ArcSubsystem from_mask(std::shared_ptr<const CombinatorialMap> ambient, EdgeMask mask);

    const CombinatorialMap& ambient() const { return *ambient_; }
    const std::shared_ptr<const CombinatorialMap>& ambient_ptr() const { return ambient_; }
    const std::vector<int>& edges() const { return edges_; }
    bool contains(int edge) const;
    int size() const { return static_cast<int>(edges_.size()); }
    int rank() const { return size() - 1; }
    std::vector<std::uint8_t> membership() const;
    /// Requires at most 64 ambient edges.
    EdgeMask mask() const;

    friend bool operator==(const ArcSubsystem& a, const ArcSubsystem& b) {
        return a.ambient_ == b.ambient_ && a.edges_ == b.edges_;
    }

private:
    std::shared_ptr<const CombinatorialMap> ambient_;
    std::vector<int> edges_;
};

std::vector<Region> split_components(const ArcSubsystem& sys);

/// Euler characteristic of the double of a region along dB - Delta, with
/// punctures and interior marked points removed first: 2 chi' - a.
int doubled_euler(const Region& r);

bool region_admissible(const Region& r);  // doubled_euler < 0
bool region_fills(const Region& r);       // disk or once-punctured disk
bool region_is_maximal_piece(const Region& r);  // triangle or once-punctured monogon

bool is_valid(const ArcSubsystem& sys);
/// Throws Error(NotValidSystem) for invalid systems.
bool fills_up(const ArcSubsystem& sys);
/// Throws Error(NotValidSystem) for invalid systems.
bool is_maximal(const ArcSubsystem& sys);

/// Mask-based predicates over one ambient with at most 64 edges; used by the
/// exhaustive scans.
class ArcOracle {
public:
    explicit ArcOracle(const CombinatorialMap& ambient);

    struct Verdict {
        bool valid = false;
        bool fills = false;
        bool maximal = false;
    };

    Verdict classify(EdgeMask mask) const;
    bool valid(EdgeMask mask) const { return classify(mask).valid; }
    bool fills(EdgeMask mask) const { return classify(mask).fills; }
    std::vector<Region> regions(EdgeMask mask) const;
    int edge_count() const { return edge_count_; }
    EdgeMask full_mask() const;

private:
    RegionSplitter splitter_;
    int edge_count_;
};

}  // namespace arcspine
