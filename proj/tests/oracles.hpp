#pragma once

// Independent oracles. None of them calls the search, chain or homology code
// they are compared against.

#include "arcspine/ribbon.hpp"
#include "arcspine/arcs.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace arcspine::oracle {

// Closed forms, written out again from the formulas.
struct Closed {
    int g, n, l, s, m;
    int vcd() const { return 2 * g + n - 2; }
    int spine() const { return l < n ? 2 * g + n + l - 2 : 2 * g + 2 * n - 3; }
    int decorated() const { return (3 * (g + 1) - 6 + 2 * n) + (l - 1); }
    int ideal() const { return 3 * g + 2 * n + l - 4; }
    int max_rank() const { return 6 * g - 7 + 2 * s + m; }
    int min_sigma() const { return m < s ? 2 * g + s - 3 : 2 * g + s - 1; }
    int min_plain() const { return m < s ? 2 * g + s - 3 : 2 * g + s - 2; }
    int bmax_edges() const { return (2 * g + 2) + 2 * (2 * g - 1) + 3 * (m - 2) + 2 * (s - m); }
};

inline Closed closed(int g, int n, int l) { return {g, n, l, 2 * n, 2 * l}; }

// Every perfect matching of the sides of T triangles and P monogons with
// fixed dart numbering, kept when connected with exactly m vertices, then
// labeled in every way. Returns the set of canonical forms.
inline std::set<std::string> naive_maximal_forms(int g, int s, int m) {
    const int edges = 6 * g - 6 + 2 * s + m;
    const int monogons = s - m;
    const int triangles = (2 * edges - monogons) / 3;
    const int n = 2 * edges;
    std::vector<std::vector<Dart>> faces;
    std::vector<Dart> phi(n);
    int next = 0;
    for (int t = 0; t < triangles; ++t) {
        faces.push_back({next, next + 1, next + 2});
        phi[next] = next + 1;
        phi[next + 1] = next + 2;
        phi[next + 2] = next;
        next += 3;
    }
    std::vector<int> monogon_faces;
    for (int p = 0; p < monogons; ++p) {
        monogon_faces.push_back(static_cast<int>(faces.size()));
        faces.push_back({next});
        phi[next] = next;
        ++next;
    }
    std::vector<int> face_of(n);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        for (Dart d : faces[f]) {
            face_of[d] = static_cast<int>(f);
        }
    }

    std::set<std::string> forms;
    std::vector<Dart> alpha(n, -1);
    std::function<void()> match = [&]() {
        const auto it = std::find(alpha.begin(), alpha.end(), -1);
        if (it == alpha.end()) {
            // Connectivity over faces.
            std::vector<int> parent(faces.size());
            std::iota(parent.begin(), parent.end(), 0);
            std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
            for (Dart d = 0; d < n; ++d) {
                parent[root(face_of[d])] = root(face_of[alpha[d]]);
            }
            for (std::size_t f = 0; f < faces.size(); ++f) {
                if (root(static_cast<int>(f)) != root(0)) {
                    return;
                }
            }
            std::vector<int> vertex(n, -1);
            int vertices = 0;
            for (Dart d = 0; d < n; ++d) {
                if (vertex[d] < 0) {
                    for (Dart x = d; vertex[x] < 0; x = phi[alpha[x]]) {
                        vertex[x] = vertices;
                    }
                    ++vertices;
                }
            }
            if (vertices != m) {
                return;
            }
            std::vector<Label> marks(m);
            std::iota(marks.begin(), marks.end(), 1);
            do {
                std::vector<Label> punctures(monogons);
                std::iota(punctures.begin(), punctures.end(), m + 1);
                do {
                    FaceListData data;
                    data.faces = faces;
                    data.alpha = alpha;
                    data.origin.resize(n);
                    for (Dart d = 0; d < n; ++d) {
                        data.origin[d] = marks[vertex[d]];
                    }
                    data.punctures.assign(faces.size(), {});
                    for (int i = 0; i < monogons; ++i) {
                        data.punctures[monogon_faces[i]] = {punctures[i]};
                    }
                    data.genus = g;
                    data.marked = m;
                    data.points = s;
                    forms.insert(canonical_form(map_from_faces(data)));
                } while (std::next_permutation(punctures.begin(), punctures.end()));
            } while (std::next_permutation(marks.begin(), marks.end()));
            return;
        }
        const Dart d = static_cast<Dart>(it - alpha.begin());
        for (Dart e = d + 1; e < n; ++e) {
            if (alpha[e] < 0) {
                alpha[d] = e;
                alpha[e] = d;
                match();
                alpha[d] = -1;
                alpha[e] = -1;
            }
        }
    };
    match();
    return forms;
}

// Longest strict chain by memoized recursion over the family.
inline int longest_chain_length(const std::vector<EdgeMask>& family) {
    if (family.empty()) {
        return -1;
    }
    std::map<EdgeMask, int> memo;
    std::function<int(EdgeMask)> up = [&](EdgeMask x) {
        if (auto it = memo.find(x); it != memo.end()) {
            return it->second;
        }
        int best = 0;
        for (EdgeMask y : family) {
            if (y != x && (x & y) == x) {
                best = std::max(best, 1 + up(y));
            }
        }
        return memo[x] = best;
    };
    int best = 0;
    for (EdgeMask x : family) {
        best = std::max(best, up(x));
    }
    return best;
}

// GF(2) Betti numbers of the order complex of a family, from every chain
// listed explicitly and dense bitset elimination.
inline std::vector<int> order_complex_betti(const std::vector<EdgeMask>& family) {
    std::vector<EdgeMask> nodes = family;
    std::sort(nodes.begin(), nodes.end(), [](EdgeMask a, EdgeMask b) {
        return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
    });
    std::vector<std::vector<std::vector<int>>> chains;
    std::vector<int> current;
    std::function<void(int)> grow = [&](int last) {
        if (chains.size() < current.size()) {
            chains.resize(current.size());
        }
        chains[current.size() - 1].push_back(current);
        for (int j = last + 1; j < static_cast<int>(nodes.size()); ++j) {
            if (nodes[j] != nodes[last] && (nodes[last] & nodes[j]) == nodes[last]) {
                current.push_back(j);
                grow(j);
                current.pop_back();
            }
        }
    };
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        current = {i};
        grow(i);
    }
    auto rank = [](std::vector<boost::dynamic_bitset<>> rows) {
        int r = 0;
        const std::size_t cols = rows.empty() ? 0 : rows[0].size();
        for (std::size_t c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
            int pivot = -1;
            for (int i = r; i < static_cast<int>(rows.size()); ++i) {
                if (rows[i][c]) {
                    pivot = i;
                    break;
                }
            }
            if (pivot < 0) {
                continue;
            }
            std::swap(rows[r], rows[pivot]);
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                if (i != r && rows[i][c]) {
                    rows[i] ^= rows[r];
                }
            }
            ++r;
        }
        return r;
    };
    const int top = static_cast<int>(chains.size());
    std::vector<int> ranks(top + 1, 0);
    for (int k = 1; k < top; ++k) {
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < chains[k - 1].size(); ++i) {
            index[chains[k - 1][i]] = i;
        }
        std::vector<boost::dynamic_bitset<>> rows;
        for (const auto& c : chains[k]) {
            boost::dynamic_bitset<> row(chains[k - 1].size());
            for (std::size_t drop = 0; drop < c.size(); ++drop) {
                std::vector<int> face = c;
                face.erase(face.begin() + static_cast<long>(drop));
                row.flip(index.at(face));
            }
            rows.push_back(std::move(row));
        }
        ranks[k] = rank(std::move(rows));
    }
    std::vector<int> betti(top, 0);
    for (int k = 0; k < top; ++k) {
        betti[k] = static_cast<int>(chains[k].size()) - ranks[k] - ranks[k + 1];
    }
    return betti;
}

}  // namespace arcspine::oracle
