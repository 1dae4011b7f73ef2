#pragma once

// Parameters of a punctured non-orientable surface N_{g+1} with n punctures,
// l of them marked, together with its orientable double cover F_g carrying
// s = 2n distinguished points of which m = 2l are marked.

#include <string>
#include <vector>

namespace arcspine {

struct CoverContext {
    int g = 0;  // genus of the orientable cover
    int n = 1;  // distinguished points downstairs
    int l = 1;  // marked points downstairs
    int s = 2;  // distinguished points upstairs
    int m = 2;  // marked points upstairs

    int nonorientable_genus() const { return g + 1; }
    int punctures_up() const { return s - m; }

    friend bool operator==(const CoverContext&, const CoverContext&) = default;
};

/// Context from the non-orientable data (N_{genus_n}, n punctures, l marked).
/// Throws Error(InvalidContext) unless 1 <= l <= n and g + n > 1.
CoverContext cover_signature(int genus_nonorientable, int n, int l);

/// Context from upstairs data; s and m must be even.
CoverContext cover_from_upstairs(int g, int s, int m);

std::string describe(const CoverContext& ctx);

struct DimensionReport {
    int teich_orientable = 0;         // 6g - 6 + 2s
    int teich_nonorientable = 0;      // 3(g+1) - 6 + 2n
    int decorated_nonorientable = 0;  // teich_nonorientable + (l - 1)
    int ideal_triangulation_dim = 0;  // 3g + 2n + l - 4
    int spine_dim = 0;
    int vcd = 0;                      // 2g + n - 2
    int arc_complex_dim = 0;          // 6g - 7 + 2s + m
};

DimensionReport dimension_report(const CoverContext& ctx);

/// Spine dimension: 2g + n + l - 2 when l < n, 2g + 2n - 3 when l = n.
int spine_dimension(const CoverContext& ctx);

struct RankBounds {
    int min_filling_rank = 0;
    int max_rank = 0;
};

/// Minimal rank of a filling arc system and the rank of a maximal one.
/// With sigma_invariant the parity of sigma-invariant systems lifts the
/// m = s bound from 2g + s - 2 to 2g + s - 1.
RankBounds rank_bounds(const CoverContext& ctx, bool sigma_invariant);

/// Number of arcs of a maximal system, 6g - 6 + 2s + m.
int maximal_arc_count(const CoverContext& ctx);

struct FormulaViolation {
    CoverContext ctx;
    std::string identity;
};

/// Checks every closed-form identity over g <= max_g, n <= max_n, 1 <= l <= n,
/// g + n > 1. Returns the violations (empty when all hold) and the number of
/// contexts visited through `visited`.
std::vector<FormulaViolation> check_formula_grid(int max_g = 10, int max_n = 10,
                                                 int* visited = nullptr);

}  // namespace arcspine
