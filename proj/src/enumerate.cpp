#include "arcspine/enumerate.hpp"

#include "arcspine/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <thread>

namespace arcspine {

FaceCounts maximal_face_counts(const CoverContext& ctx) {
    FaceCounts c;
    c.edges = maximal_arc_count(ctx);
    c.monogons = ctx.s - ctx.m;
    c.triangles = (2 * c.edges - c.monogons) / 3;
    return c;
}

namespace {

// A partial gluing. Faces occupy consecutive dart ranges in phi order.
struct Partial {
    std::vector<Dart> alpha;
    std::vector<Dart> phi;
    std::vector<int> face_start;
    std::vector<int> face_size;
    int used = 0;
    int triangles = 0;
    int monogons = 0;
    int closed = 0;  // completed rho-cycles
    int open = 0;    // darts without an alpha partner
};

struct SearchLimits {
    FaceCounts counts;
    int marked = 0;
    int darts = 0;
};

void add_face(Partial& p, int size) {
    const int start = p.used;
    p.face_start.push_back(start);
    p.face_size.push_back(size);
    for (int i = 0; i < size; ++i) {
        p.phi[start + i] = start + (i + 1) % size;
    }
    p.used += size;
    p.open += size;
    (size == 3 ? p.triangles : p.monogons) += 1;
}

void remove_face(Partial& p) {
    const int size = p.face_size.back();
    p.face_start.pop_back();
    p.face_size.pop_back();
    p.used -= size;
    p.open -= size;
    (size == 3 ? p.triangles : p.monogons) -= 1;
}

// Whether the rho-cycle through x is complete; notes if it passes `other`.
bool closed_cycle(const Partial& p, Dart x, Dart other, bool& contains_other) {
    contains_other = false;
    Dart y = x;
    for (int steps = 0; steps <= p.used; ++steps) {
        if (p.alpha[y] < 0) {
            return false;
        }
        y = p.phi[p.alpha[y]];
        if (y == other) {
            contains_other = true;
        }
        if (y == x) {
            return true;
        }
    }
    return false;
}

int newly_closed(const Partial& p, Dart a, Dart b) {
    bool b_inside = false;
    int count = closed_cycle(p, a, b, b_inside) ? 1 : 0;
    if (!b_inside) {
        bool unused = false;
        count += closed_cycle(p, b, a, unused) ? 1 : 0;
    }
    return count;
}

// Breadth-first code of a complete gluing from root r.
std::vector<int> root_code(const Partial& p, Dart r) {
    const int n = p.used;
    std::vector<int> number(n, -1), order;
    order.reserve(n);
    number[r] = 0;
    order.push_back(r);
    std::vector<int> code;
    code.reserve(2 * n);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Dart x = order[i];
        for (Dart y : {p.phi[x], p.alpha[x]}) {
            if (number[y] < 0) {
                number[y] = static_cast<int>(order.size());
                order.push_back(y);
            }
            code.push_back(number[y]);
        }
    }
    return code;
}

bool root_is_canonical(const Partial& p) {
    const std::vector<int> base = root_code(p, 0);
    for (Dart r = 1; r < p.used; ++r) {
        if (root_code(p, r) < base) {
            return false;
        }
    }
    return true;
}

struct TaskResult {
    std::map<std::string, CombinatorialMap> forms;
    std::uint64_t expansions = 0;
    std::uint64_t duplicates = 0;
    bool aborted = false;
};

class Search {
public:
    Search(const CoverContext& ctx, const EnumerateOptions& options)
        : ctx_(ctx), options_(options) {
        limits_.counts = maximal_face_counts(ctx);
        limits_.marked = ctx.m;
        limits_.darts = 2 * limits_.counts.edges;
    }

    Partial empty() const {
        Partial p;
        p.alpha.assign(limits_.darts, -1);
        p.phi.assign(limits_.darts, -1);
        return p;
    }

    /// Children of a state, each as a reversible step applied to a copy.
    std::vector<Partial> children(const Partial& p) const {
        std::vector<Partial> out;
        if (p.used == 0) {
            for (int size : face_sizes(p)) {
                Partial q = p;
                add_face(q, size);
                out.push_back(std::move(q));
            }
            return out;
        }
        const Dart d = lowest_open(p);
        if (d < 0) {
            return out;
        }
        for (Dart e = d + 1; e < p.used; ++e) {
            if (p.alpha[e] >= 0) {
                continue;
            }
            Partial q = p;
            if (glue(q, d, e)) {
                out.push_back(std::move(q));
            }
        }
        for (int size : face_sizes(p)) {
            Partial q = p;
            add_face(q, size);
            if (glue(q, d, p.used)) {
                out.push_back(std::move(q));
            }
        }
        return out;
    }

    void run(Partial& p, TaskResult& result, std::uint64_t cap) const {
        if (result.aborted) {
            return;
        }
        if (++result.expansions > cap) {
            result.aborted = true;
            return;
        }
        if (p.used == 0) {
            for (int size : face_sizes(p)) {
                add_face(p, size);
                run(p, result, cap);
                remove_face(p);
            }
            return;
        }
        const Dart d = lowest_open(p);
        if (d < 0) {
            if (complete(p) && root_is_canonical(p)) {
                emit(p, result);
            }
            return;
        }
        for (Dart e = d + 1; e < p.used; ++e) {
            if (p.alpha[e] >= 0) {
                continue;
            }
            const int before = p.closed;
            if (glue(p, d, e)) {
                run(p, result, cap);
            }
            unglue(p, d, e, before);
        }
        for (int size : face_sizes(p)) {
            const Dart fresh = p.used;
            add_face(p, size);
            const int before = p.closed;
            if (glue(p, d, fresh)) {
                run(p, result, cap);
            }
            unglue(p, d, fresh, before);
            remove_face(p);
        }
    }

private:
    std::vector<int> face_sizes(const Partial& p) const {
        std::vector<int> sizes;
        if (p.triangles < limits_.counts.triangles) {
            sizes.push_back(3);
        }
        if (p.monogons < limits_.counts.monogons) {
            sizes.push_back(1);
        }
        return sizes;
    }

    static Dart lowest_open(const Partial& p) {
        for (Dart d = 0; d < p.used; ++d) {
            if (p.alpha[d] < 0) {
                return d;
            }
        }
        return -1;
    }

    bool complete(const Partial& p) const {
        return p.open == 0 && p.triangles == limits_.counts.triangles &&
               p.monogons == limits_.counts.monogons && p.closed == limits_.marked;
    }

    // Glues a and b and reports whether the vertex count can still reach m.
    bool glue(Partial& p, Dart a, Dart b) const {
        p.alpha[a] = b;
        p.alpha[b] = a;
        p.open -= 2;
        p.closed += newly_closed(p, a, b);
        if (p.closed > limits_.marked) {
            return false;
        }
        const bool more_darts = p.open > 0 || p.triangles < limits_.counts.triangles ||
                                p.monogons < limits_.counts.monogons;
        return !(p.closed == limits_.marked && more_darts);
    }

    static void unglue(Partial& p, Dart a, Dart b, int closed_before) {
        p.alpha[a] = -1;
        p.alpha[b] = -1;
        p.open += 2;
        p.closed = closed_before;
    }

    void emit(const Partial& p, TaskResult& result) const {
        const int n = p.used;
        std::vector<int> vertex(n, -1);
        int vertices = 0;
        for (Dart d = 0; d < n; ++d) {
            if (vertex[d] >= 0) {
                continue;
            }
            for (Dart x = d; vertex[x] < 0; x = p.phi[p.alpha[x]]) {
                vertex[x] = vertices;
            }
            ++vertices;
        }
        std::vector<int> monogons;
        FaceListData base;
        base.alpha = p.alpha;
        for (std::size_t f = 0; f < p.face_start.size(); ++f) {
            std::vector<Dart> face(p.face_size[f]);
            std::iota(face.begin(), face.end(), p.face_start[f]);
            base.faces.push_back(std::move(face));
            if (p.face_size[f] == 1) {
                monogons.push_back(static_cast<int>(f));
            }
        }
        base.genus = ctx_.g;
        base.marked = ctx_.m;
        base.points = ctx_.s;

        std::vector<Label> marks(ctx_.m);
        std::iota(marks.begin(), marks.end(), 1);
        do {
            std::vector<Label> punctures(ctx_.s - ctx_.m);
            std::iota(punctures.begin(), punctures.end(), ctx_.m + 1);
            do {
                FaceListData data = base;
                data.origin.resize(n);
                for (Dart d = 0; d < n; ++d) {
                    data.origin[d] = marks[vertex[d]];
                }
                data.punctures.assign(data.faces.size(), {});
                for (std::size_t i = 0; i < monogons.size(); ++i) {
                    data.punctures[monogons[i]] = {punctures[i]};
                }
                CombinatorialMap map = map_from_faces(data);
                std::string form = canonical_form(map, options_.label_group);
                if (!result.forms.emplace(std::move(form), std::move(map)).second) {
                    ++result.duplicates;
                }
            } while (std::next_permutation(punctures.begin(), punctures.end()));
        } while (std::next_permutation(marks.begin(), marks.end()));
    }

    CoverContext ctx_;
    const EnumerateOptions& options_;
    SearchLimits limits_;
};

}  // namespace

Enumeration enumerate_maximal(const CoverContext& ctx, const EnumerateOptions& options) {
    const Search search(ctx, options);
    Enumeration out;

    // Root branches: the states two levels below the empty gluing.
    std::vector<Partial> tasks;
    for (Partial& root : search.children(search.empty())) {
        ++out.expansions;
        std::vector<Partial> next = search.children(root);
        if (next.empty()) {
            tasks.push_back(std::move(root));
        }
        for (Partial& child : next) {
            tasks.push_back(std::move(child));
        }
    }
    const std::uint64_t left = options.budget > out.expansions ? options.budget - out.expansions : 0;
    const std::uint64_t share = tasks.empty() ? 0 : std::max<std::uint64_t>(1, left / tasks.size());

    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            search.run(tasks[i], results[i], share);
        }
    };
    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) {
            t.join();
        }
    }

    std::map<std::string, CombinatorialMap> merged;
    out.exhaustive = options.budget > 0 && out.expansions <= options.budget;
    for (TaskResult& r : results) {
        out.expansions += r.expansions;
        out.duplicates += r.duplicates;
        out.exhaustive = out.exhaustive && !r.aborted;
        for (auto& [form, map] : r.forms) {
            if (!merged.emplace(form, std::move(map)).second) {
                ++out.duplicates;
            }
        }
    }
    for (auto& [form, map] : merged) {
        out.maps.push_back(std::move(map));
    }
    return out;
}

std::vector<SigmaAmbient> sigma_flip_walk(const CoverContext& ctx, const WalkOptions& walk, int* steps_taken) {
    const ConstructionBundle bundle = maximal_sigma_system(ctx);
    std::map<std::string, SigmaAmbient> seen;
    SigmaMap current{*bundle.ambient, bundle.sigma};
    seen.emplace(canonical_form(current.map), SigmaAmbient{bundle.ambient, bundle.sigma});

    std::mt19937_64 rng(walk.seed);
    int steps = 0;
    const int edges = current.map.edge_count();
    while (static_cast<int>(seen.size()) < walk.target && steps < walk.max_steps) {
        ++steps;
        std::vector<int> order(edges);
        std::iota(order.begin(), order.end(), 0);
        for (int i = edges - 1; i > 0; --i) {
            std::swap(order[i], order[rng() % static_cast<std::uint64_t>(i + 1)]);
        }
        bool moved = false;
        for (int e : order) {
            if (!is_flippable(current.map, e)) {
                continue;
            }
            try {
                current = equivariant_flip(current.map, current.sigma, e);
            } catch (const Error&) {
                continue;
            }
            moved = true;
            break;
        }
        if (!moved) {
            break;
        }
        const ArcOracle oracle(current.map);
        if (!oracle.classify(oracle.full_mask()).maximal) {
            throw Error(ErrorCode::ConstructionFailed, "equivariant flip left a non-maximal system");
        }
        std::string form = canonical_form(current.map);
        if (seen.count(form) == 0) {
            seen.emplace(std::move(form),
                         SigmaAmbient{std::make_shared<const CombinatorialMap>(current.map), current.sigma});
        }
    }
    if (steps_taken != nullptr) {
        *steps_taken = steps;
    }
    std::vector<SigmaAmbient> out;
    for (auto& [form, ambient] : seen) {
        out.push_back(std::move(ambient));
    }
    return out;
}

namespace {

std::vector<SigmaAmbient> with_involutions(const std::vector<CombinatorialMap>& maps) {
    std::vector<SigmaAmbient> out;
    for (const CombinatorialMap& map : maps) {
        std::vector<DeckInvolution> found = find_deck_involutions(map);
        if (!found.empty()) {
            out.push_back({std::make_shared<const CombinatorialMap>(map), std::move(found.front())});
        }
    }
    return out;
}

}  // namespace

SigmaEnumeration enumerate_sigma_maximal(const CoverContext& ctx, const EnumerateOptions& options,
                                         const WalkOptions& walk) {
    SigmaEnumeration out;
    Enumeration all = enumerate_maximal(ctx, options);
    out.expansions = all.expansions;
    out.exhaustive = all.exhaustive;
    if (all.exhaustive) {
        out.ambients = with_involutions(all.maps);
    } else {
        out.ambients = sigma_flip_walk(ctx, walk, &out.walk_steps);
    }
    return out;
}

AmbientStats ambient_stats(std::shared_ptr<const CombinatorialMap> map, const DeckInvolution* sigma,
                           const PosetOptions& options) {
    AmbientStats stats;
    stats.form = canonical_form(*map);
    stats.edges = map->edge_count();
    stats.min_filling_rank = min_rank(build_poset(map, sigma, {true, false}, options).nodes);
    if (sigma != nullptr) {
        const FillingPoset sigma_filling = build_poset(map, sigma, {true, true}, options);
        stats.min_sigma_filling_rank = min_rank(sigma_filling.nodes);
        stats.max_sigma_chain = longest_chain(sigma_filling).length;
        const FillingPoset invariant = build_poset(map, sigma, {false, true}, options);
        stats.sigma_subsets = invariant.nodes.size();
        stats.odd_sigma_subsets = static_cast<std::uint64_t>(
            std::count_if(invariant.nodes.begin(), invariant.nodes.end(),
                          [](EdgeMask m) { return std::popcount(m) % 2 != 0; }));
    }
    return stats;
}

BoundSweep sweep_bounds(const CoverContext& ctx, const EnumerateOptions& options, const WalkOptions& walk) {
    BoundSweep sweep;
    sweep.ctx = ctx;
    sweep.plain = rank_bounds(ctx, false);
    sweep.sigma = rank_bounds(ctx, true);
    sweep.spine_dim = spine_dimension(ctx);

    PosetOptions poset;
    poset.workers = options.workers;
    const Enumeration all = enumerate_maximal(ctx, options);
    sweep.exact = all.exhaustive;

    std::vector<SigmaAmbient> sigma_ambients;
    std::vector<std::shared_ptr<const CombinatorialMap>> plain_ambients;
    if (sweep.exact) {
        sigma_ambients = with_involutions(all.maps);
        for (const CombinatorialMap& map : all.maps) {
            plain_ambients.push_back(std::make_shared<const CombinatorialMap>(map));
        }
    } else {
        sigma_ambients = sigma_flip_walk(ctx, walk);
        for (const SigmaAmbient& a : sigma_ambients) {
            plain_ambients.push_back(a.map);
        }
    }

    auto lower = [](int& slot, int value) {
        if (value >= 0 && (slot < 0 || value < slot)) {
            slot = value;
        }
    };
    sweep.consistent = true;
    for (const auto& map : plain_ambients) {
        const int r = min_rank(build_poset(map, nullptr, {true, false}, poset).nodes);
        lower(sweep.observed_min_filling_rank, r);
        sweep.consistent = sweep.consistent && r >= sweep.plain.min_filling_rank;
    }
    for (const SigmaAmbient& a : sigma_ambients) {
        AmbientStats stats = ambient_stats(a.map, &a.sigma, poset);
        lower(sweep.observed_min_sigma_filling_rank, stats.min_sigma_filling_rank);
        sweep.observed_max_sigma_chain = std::max(sweep.observed_max_sigma_chain, stats.max_sigma_chain);
        sweep.parity_subsets += stats.sigma_subsets;
        sweep.parity_exceptions += stats.odd_sigma_subsets;
        sweep.consistent = sweep.consistent && stats.min_sigma_filling_rank >= sweep.sigma.min_filling_rank &&
                           stats.max_sigma_chain <= sweep.spine_dim;
        sweep.sigma_stats.push_back(std::move(stats));
    }
    sweep.consistent = sweep.consistent && sweep.parity_exceptions == 0;
    sweep.ambient_count = plain_ambients.size();
    sweep.sigma_ambient_count = sigma_ambients.size();
    sweep.attained = sweep.exact && sweep.observed_min_filling_rank == sweep.plain.min_filling_rank &&
                     sweep.observed_min_sigma_filling_rank == sweep.sigma.min_filling_rank &&
                     sweep.observed_max_sigma_chain == sweep.spine_dim;
    return sweep;
}

}  // namespace arcspine
