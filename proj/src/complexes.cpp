#include "arcspine/complexes.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

namespace arcspine {

namespace {

bool size_order(EdgeMask a, EdgeMask b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
}

EdgeMask ground(int atoms) {
    return atoms >= 64 ? ~EdgeMask{0} : (EdgeMask{1} << atoms) - 1;
}

}  // namespace

void sort_by_size(std::vector<EdgeMask>& masks) { std::sort(masks.begin(), masks.end(), size_order); }

bool FillingPoset::contains(EdgeMask mask) const {
    return std::binary_search(nodes.begin(), nodes.end(), mask, size_order);
}

FillingPoset build_poset(std::shared_ptr<const CombinatorialMap> ambient, const DeckInvolution* sigma,
                         PosetFlags flags, const PosetOptions& options) {
    const int E = ambient->edge_count();
    if (E > options.edge_cap || E > 40) {
        throw Error(ErrorCode::BudgetExceeded, "ambient has " + std::to_string(E) +
                                                   " edges, above the exhaustive cap of " +
                                                   std::to_string(options.edge_cap));
    }
    if (flags.sigma && sigma == nullptr) {
        throw Error(ErrorCode::NotSigmaInvariant, "sigma filter requested without an involution");
    }
    const ArcOracle oracle(*ambient);
    const EdgeMask end = EdgeMask{1} << E;
    const int workers = std::max(1, options.workers);
    std::vector<std::vector<EdgeMask>> found(workers);

    auto scan = [&](int w) {
        const EdgeMask chunk = (end + workers - 1) / workers;
        const EdgeMask lo = std::max<EdgeMask>(1, chunk * w);
        const EdgeMask hi = std::min(end, chunk * (w + 1));
        for (EdgeMask mask = lo; mask < hi; ++mask) {
            if (flags.sigma && sigma->image(mask) != mask) {
                continue;
            }
            const ArcOracle::Verdict v = oracle.classify(mask);
            if (!v.valid || (flags.filling && !v.fills)) {
                continue;
            }
            found[w].push_back(mask);
        }
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back(scan, w);
        }
        for (auto& t : threads) {
            t.join();
        }
    }

    FillingPoset poset;
    poset.ambient = std::move(ambient);
    if (sigma != nullptr) {
        poset.sigma = *sigma;
    }
    poset.flags = flags;
    poset.edge_count = E;
    for (auto& part : found) {
        poset.nodes.insert(poset.nodes.end(), part.begin(), part.end());
    }
    sort_by_size(poset.nodes);
    return poset;
}

int min_rank(const std::vector<EdgeMask>& nodes) {
    int best = -1;
    for (EdgeMask m : nodes) {
        const int r = std::popcount(m) - 1;
        if (best < 0 || r < best) {
            best = r;
        }
    }
    return best;
}

ChainWitness longest_chain(const FillingPoset& poset) { return longest_chain(poset.nodes, poset.edge_count); }

ChainWitness longest_chain(const std::vector<EdgeMask>& family, int edge_count) {
    ChainWitness out;
    if (family.empty()) {
        return out;
    }
    std::vector<EdgeMask> nodes = family;
    sort_by_size(nodes);

    if (edge_count <= 22) {
        // best[S]: most nodes in a chain of family members contained in S;
        // top[S]: the largest member of such a chain.
        const std::size_t size = std::size_t{1} << edge_count;
        std::vector<std::uint8_t> member(size, 0), best(size, 0);
        std::vector<EdgeMask> top(size, 0);
        for (EdgeMask m : nodes) {
            member[m] = 1;
        }
        for (EdgeMask s = 1; s < size; ++s) {
            std::uint8_t below = 0;
            EdgeMask below_top = 0;
            for (EdgeMask rest = s; rest != 0; rest &= rest - 1) {
                const EdgeMask sub = s & ~(rest & -rest);
                if (best[sub] > below) {
                    below = best[sub];
                    below_top = top[sub];
                }
            }
            if (member[s]) {
                best[s] = static_cast<std::uint8_t>(below + 1);
                top[s] = s;
            } else {
                best[s] = below;
                top[s] = below_top;
            }
        }
        EdgeMask t = top[size - 1];
        out.length = best[size - 1] - 1;
        while (true) {
            out.chain.push_back(t);
            const int want = best[t] - 1;
            if (want == 0) {
                break;
            }
            EdgeMask next = 0;
            for (EdgeMask rest = t; rest != 0; rest &= rest - 1) {
                const EdgeMask sub = t & ~(rest & -rest);
                if (best[sub] == want) {
                    next = top[sub];
                    break;
                }
            }
            t = next;
        }
        std::reverse(out.chain.begin(), out.chain.end());
        return out;
    }

    // Quadratic fallback over the nodes.
    std::vector<int> length(nodes.size(), 1), previous(nodes.size(), -1);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (nodes[i] != nodes[j] && (nodes[i] & nodes[j]) == nodes[i] && length[i] + 1 > length[j]) {
                length[j] = length[i] + 1;
                previous[j] = static_cast<int>(i);
            }
        }
    }
    int at = static_cast<int>(std::max_element(length.begin(), length.end()) - length.begin());
    out.length = length[at] - 1;
    for (; at >= 0; at = previous[at]) {
        out.chain.push_back(nodes[at]);
    }
    std::reverse(out.chain.begin(), out.chain.end());
    return out;
}

// ---------------------------------------------------------------------------
// GF(2) linear algebra

std::size_t SimplicialComplex::size() const {
    std::size_t total = 0;
    for (const auto& layer : simplices) {
        total += layer.size();
    }
    return total;
}

SimplicialComplex closure_of(const std::vector<Simplex>& faces, int vertex_count) {
    std::vector<std::set<Simplex>> layers;
    for (Simplex s : faces) {
        std::sort(s.begin(), s.end());
        const int k = static_cast<int>(s.size());
        if (k == 0 || k > 30) {
            continue;
        }
        for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << k); ++sub) {
            Simplex face;
            for (int i = 0; i < k; ++i) {
                if ((sub >> i) & 1u) {
                    face.push_back(s[i]);
                }
            }
            if (layers.size() < face.size()) {
                layers.resize(face.size());
            }
            layers[face.size() - 1].insert(std::move(face));
        }
    }
    SimplicialComplex out;
    out.vertex_count = vertex_count;
    for (auto& layer : layers) {
        out.simplices.emplace_back(layer.begin(), layer.end());
    }
    return out;
}

Gf2Matrix boundary_matrix(const SimplicialComplex& complex, int k) {
    Gf2Matrix m;
    if (k <= 0 || k > complex.dimension()) {
        return m;
    }
    const auto& rows = complex.simplices[k - 1];
    m.rows = static_cast<int>(rows.size());
    std::map<Simplex, int> index;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        index.emplace(rows[i], static_cast<int>(i));
    }
    const std::size_t words = (rows.size() + 63) / 64;
    for (const Simplex& s : complex.simplices[k]) {
        std::vector<std::uint64_t> column(words, 0);
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face;
            face.reserve(s.size() - 1);
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i != drop) {
                    face.push_back(s[i]);
                }
            }
            const int r = index.at(face);
            column[r / 64] ^= std::uint64_t{1} << (r % 64);
        }
        m.columns.push_back(std::move(column));
    }
    return m;
}

Gf2Matrix multiply(const Gf2Matrix& a, const Gf2Matrix& b) {
    Gf2Matrix out;
    out.rows = a.rows;
    const std::size_t words = (static_cast<std::size_t>(a.rows) + 63) / 64;
    for (const auto& bcol : b.columns) {
        std::vector<std::uint64_t> column(words, 0);
        for (std::size_t i = 0; i < a.columns.size(); ++i) {
            if ((bcol[i / 64] >> (i % 64)) & 1u) {
                for (std::size_t w = 0; w < words; ++w) {
                    column[w] ^= a.columns[i][w];
                }
            }
        }
        out.columns.push_back(std::move(column));
    }
    return out;
}

bool is_zero(const Gf2Matrix& m) {
    for (const auto& column : m.columns) {
        for (std::uint64_t w : column) {
            if (w != 0) {
                return false;
            }
        }
    }
    return true;
}

int rank_gf2(Gf2Matrix m) {
    std::vector<int> pivot_of_row(m.rows, -1);
    int rank = 0;
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
        auto& column = m.columns[c];
        while (true) {
            int low = -1;
            for (std::size_t w = column.size(); w-- > 0;) {
                if (column[w] != 0) {
                    low = static_cast<int>(w * 64 + 63 - std::countl_zero(column[w]));
                    break;
                }
            }
            if (low < 0) {
                break;
            }
            if (pivot_of_row[low] < 0) {
                pivot_of_row[low] = static_cast<int>(c);
                ++rank;
                break;
            }
            const auto& pivot = m.columns[pivot_of_row[low]];
            for (std::size_t w = 0; w < column.size(); ++w) {
                column[w] ^= pivot[w];
            }
        }
    }
    return rank;
}

std::vector<int> homology_gf2(const SimplicialComplex& complex) {
    const int dim = complex.dimension();
    std::vector<int> ranks(dim + 2, 0);
    for (int k = 1; k <= dim; ++k) {
        ranks[k] = rank_gf2(boundary_matrix(complex, k));
    }
    std::vector<int> betti(dim + 1, 0);
    for (int k = 0; k <= dim; ++k) {
        betti[k] = static_cast<int>(complex.simplices[k].size()) - ranks[k] - ranks[k + 1];
    }
    return betti;
}

bool boundary_squares_vanish(const SimplicialComplex& complex) {
    for (int k = 2; k <= complex.dimension(); ++k) {
        if (!is_zero(multiply(boundary_matrix(complex, k - 1), boundary_matrix(complex, k)))) {
            return false;
        }
    }
    return true;
}

SimplicialComplex order_complex(const std::vector<EdgeMask>& family, std::size_t max_simplices) {
    std::vector<EdgeMask> nodes = family;
    sort_by_size(nodes);
    const int n = static_cast<int>(nodes.size());
    // up[i]: later nodes strictly containing node i (the size order is a
    // linear extension of inclusion).
    std::vector<std::vector<int>> up(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if ((nodes[i] & nodes[j]) == nodes[i] && nodes[i] != nodes[j]) {
                up[i].push_back(j);
            }
        }
    }
    SimplicialComplex out;
    out.vertex_count = n;
    std::size_t total = 0;
    Simplex chain;
    auto extend = [&](auto&& self, int last) -> void {
        const std::size_t k = chain.size() - 1;
        if (out.simplices.size() <= k) {
            out.simplices.resize(k + 1);
        }
        out.simplices[k].push_back(chain);
        if (++total > max_simplices) {
            throw Error(ErrorCode::BudgetExceeded, "order complex exceeds " + std::to_string(max_simplices) +
                                                       " simplices");
        }
        for (int next : up[last]) {
            chain.push_back(next);
            self(self, next);
            chain.pop_back();
        }
    };
    for (int i = 0; i < n; ++i) {
        chain.assign(1, i);
        extend(extend, i);
    }
    for (auto& layer : out.simplices) {
        std::sort(layer.begin(), layer.end());
    }
    return out;
}

std::optional<SimplicialComplex> homotopy_model(const std::vector<EdgeMask>& family, int atoms) {
    SimplicialComplex out;
    if (family.empty()) {
        return out;
    }
    const EdgeMask all = ground(atoms);
    const std::unordered_set<EdgeMask> members(family.begin(), family.end());
    bool down = true;
    bool up = true;
    for (EdgeMask s : family) {
        for (int e = 0; e < atoms && (down || up); ++e) {
            const EdgeMask bit = EdgeMask{1} << e;
            if (s & bit) {
                if ((s ^ bit) != 0 && members.count(s ^ bit) == 0) {
                    down = false;
                }
            } else if (members.count(s | bit) == 0) {
                up = false;
            }
        }
    }
    auto as_simplex = [atoms](EdgeMask m) {
        Simplex s;
        for (int e = 0; e < atoms; ++e) {
            if ((m >> e) & 1u) {
                s.push_back(e);
            }
        }
        return s;
    };
    auto place = [&](Simplex s) {
        const std::size_t k = s.size() - 1;
        if (out.simplices.size() <= k) {
            out.simplices.resize(k + 1);
        }
        out.simplices[k].push_back(std::move(s));
    };
    if (down) {
        out.vertex_count = atoms;
        for (EdgeMask s : family) {
            place(as_simplex(s));
        }
    } else if (up) {
        // Complements form a complex K; the whole ground set becomes a cone point.
        const bool coned = members.count(all) != 0;
        const int apex = atoms;
        out.vertex_count = atoms + (coned ? 1 : 0);
        if (coned) {
            place({apex});
        }
        for (EdgeMask s : family) {
            if (s == all) {
                continue;
            }
            Simplex face = as_simplex(all & ~s);
            if (coned) {
                Simplex cone = face;
                cone.push_back(apex);
                place(std::move(cone));
            }
            place(std::move(face));
        }
    } else {
        return std::nullopt;
    }
    for (auto& layer : out.simplices) {
        std::sort(layer.begin(), layer.end());
    }
    return out;
}

std::vector<int> order_complex_betti(const std::vector<EdgeMask>& family, int atoms, std::size_t max_simplices) {
    if (auto model = homotopy_model(family, atoms)) {
        return homology_gf2(*model);
    }
    return homology_gf2(order_complex(family, max_simplices));
}

std::vector<EdgeMask> orbit_family(const std::vector<EdgeMask>& family, const DeckInvolution& sigma) {
    const auto orbits = sigma.edge_orbits();
    std::vector<EdgeMask> out;
    out.reserve(family.size());
    for (EdgeMask m : family) {
        EdgeMask o = 0;
        for (std::size_t i = 0; i < orbits.size(); ++i) {
            if ((m >> orbits[i].first) & 1u) {
                o |= EdgeMask{1} << i;
            }
        }
        out.push_back(o);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Collapse

namespace {

std::vector<int> trimmed(std::vector<int> betti) {
    while (betti.size() > 1 && betti.back() == 0) {
        betti.pop_back();
    }
    return betti;
}

}  // namespace

CollapseTrace weight_stratified_collapse(const FillingPoset& all_valid, const PosetOptions& options) {
    if (all_valid.flags.filling || all_valid.flags.sigma) {
        throw Error(ErrorCode::OrderViolation, "collapse starts from the unfiltered poset of valid systems");
    }
    const ArcOracle oracle(*all_valid.ambient);
    const int E = all_valid.edge_count;
    const DeckInvolution* sigma = all_valid.sigma ? &*all_valid.sigma : nullptr;

    CollapseTrace trace;
    std::vector<EdgeMask> current = all_valid.nodes;
    {
        CollapseStage initial;
        initial.remaining = current.size();
        initial.betti = order_complex_betti(current, E);
        trace.stages.push_back(std::move(initial));
    }
    for (int k = 1; k <= E; ++k) {
        CollapseStage stage;
        stage.removed_rank = k - 1;
        std::vector<EdgeMask> kept;
        for (EdgeMask m : current) {
            if (std::popcount(m) == k && !oracle.fills(m)) {
                stage.removed.push_back(m);
            } else {
                kept.push_back(m);
            }
        }
        for (EdgeMask m : kept) {
            if (std::popcount(m) <= k && !oracle.fills(m)) {
                throw Error(ErrorCode::OrderViolation,
                            "non-filling system of rank " + std::to_string(std::popcount(m) - 1) +
                                " survives stage " + std::to_string(k));
            }
        }
        if (sigma != nullptr) {
            const std::unordered_set<EdgeMask> removed(stage.removed.begin(), stage.removed.end());
            stage.sigma_stable = std::all_of(stage.removed.begin(), stage.removed.end(),
                                             [&](EdgeMask m) { return removed.count(sigma->image(m)) != 0; });
        }
        current = std::move(kept);
        stage.remaining = current.size();
        stage.betti = order_complex_betti(current, E);
        trace.all_sigma_stable = trace.all_sigma_stable && stage.sigma_stable;
        trace.stages.push_back(std::move(stage));
    }

    PosetFlags filling;
    filling.filling = true;
    PosetOptions scan = options;
    scan.edge_cap = std::max(scan.edge_cap, E);
    const FillingPoset target = build_poset(all_valid.ambient, sigma, filling, scan);
    trace.ends_at_filling_poset = (current == target.nodes);
    const std::vector<int> first = trimmed(trace.stages.front().betti);
    trace.betti_constant = std::all_of(trace.stages.begin(), trace.stages.end(),
                                       [&](const CollapseStage& s) { return trimmed(s.betti) == first; });
    return trace;
}

}  // namespace arcspine
