#include "arcspine/surface.hpp"

#include "arcspine/error.hpp"

#include <sstream>

namespace arcspine {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::InvalidInvolution: return "InvalidInvolution";
    case ErrorCode::DuplicateVertexLabel: return "DuplicateVertexLabel";
    case ErrorCode::UnlabeledVertex: return "UnlabeledVertex";
    case ErrorCode::UnassignedPuncture: return "UnassignedPuncture";
    case ErrorCode::BadLabel: return "BadLabel";
    case ErrorCode::EulerMismatch: return "EulerMismatch";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::EmptySystem: return "EmptySystem";
    case ErrorCode::NotValidSystem: return "NotValidSystem";
    case ErrorCode::NotSigmaInvariant: return "NotSigmaInvariant";
    case ErrorCode::NotFlippable: return "NotFlippable";
    case ErrorCode::SymmetryBroken: return "SymmetryBroken";
    case ErrorCode::NotInvolutive: return "NotInvolutive";
    case ErrorCode::OrientationPreserving: return "OrientationPreserving";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::FixedVertex: return "FixedVertex";
    case ErrorCode::FixedEdge: return "FixedEdge";
    case ErrorCode::FixedFace: return "FixedFace";
    case ErrorCode::LabelPairingBroken: return "LabelPairingBroken";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::ChainBroken: return "ChainBroken";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {

void require_hypothesis(int g, int n, int l) {
    if (g < 0) {
        throw Error(ErrorCode::InvalidContext, "cover genus must be >= 0");
    }
    if (n < 1) {
        throw Error(ErrorCode::InvalidContext, "need at least one puncture");
    }
    if (l < 1 || l > n) {
        throw Error(ErrorCode::InvalidContext, "marked count must satisfy 1 <= l <= n");
    }
    if (g + n <= 1) {
        throw Error(ErrorCode::InvalidContext, "hypothesis g + n > 1 fails");
    }
}

}  // namespace

CoverContext cover_signature(int genus_nonorientable, int n, int l) {
    if (genus_nonorientable < 1) {
        throw Error(ErrorCode::InvalidContext, "non-orientable genus must be >= 1");
    }
    const int g = genus_nonorientable - 1;
    require_hypothesis(g, n, l);
    return CoverContext{g, n, l, 2 * n, 2 * l};
}

CoverContext cover_from_upstairs(int g, int s, int m) {
    if (s % 2 != 0 || m % 2 != 0) {
        throw Error(ErrorCode::InvalidContext, "s and m must be even on a double cover");
    }
    require_hypothesis(g, s / 2, m / 2);
    return CoverContext{g, s / 2, m / 2, s, m};
}

std::string describe(const CoverContext& ctx) {
    std::ostringstream out;
    out << "N_" << ctx.nonorientable_genus() << " (n=" << ctx.n << ", l=" << ctx.l
        << ") / F_" << ctx.g << " (s=" << ctx.s << ", m=" << ctx.m << ")";
    return out.str();
}

int spine_dimension(const CoverContext& ctx) {
    if (ctx.l < ctx.n) {
        return 2 * ctx.g + ctx.n + ctx.l - 2;
    }
    return 2 * ctx.g + 2 * ctx.n - 3;
}

int maximal_arc_count(const CoverContext& ctx) {
    return 6 * ctx.g - 6 + 2 * ctx.s + ctx.m;
}

DimensionReport dimension_report(const CoverContext& ctx) {
    require_hypothesis(ctx.g, ctx.n, ctx.l);
    DimensionReport r;
    r.teich_orientable = 6 * ctx.g - 6 + 2 * ctx.s;
    r.teich_nonorientable = 3 * (ctx.g + 1) - 6 + 2 * ctx.n;
    r.decorated_nonorientable = r.teich_nonorientable + (ctx.l - 1);
    r.ideal_triangulation_dim = 3 * ctx.g + 2 * ctx.n + ctx.l - 4;
    r.spine_dim = spine_dimension(ctx);
    r.vcd = 2 * ctx.g + ctx.n - 2;
    r.arc_complex_dim = 6 * ctx.g - 7 + 2 * ctx.s + ctx.m;
    return r;
}

RankBounds rank_bounds(const CoverContext& ctx, bool sigma_invariant) {
    RankBounds b;
    b.max_rank = 6 * ctx.g - 7 + 2 * ctx.s + ctx.m;
    if (ctx.m < ctx.s) {
        b.min_filling_rank = 2 * ctx.g + ctx.s - 3;
    } else {
        b.min_filling_rank = 2 * ctx.g + ctx.s - (sigma_invariant ? 1 : 2);
    }
    return b;
}

std::vector<FormulaViolation> check_formula_grid(int max_g, int max_n, int* visited) {
    std::vector<FormulaViolation> bad;
    int count = 0;
    for (int g = 0; g <= max_g; ++g) {
        for (int n = 1; n <= max_n; ++n) {
            for (int l = 1; l <= n; ++l) {
                if (g + n <= 1) {
                    continue;
                }
                ++count;
                const CoverContext ctx = cover_signature(g + 1, n, l);
                const DimensionReport r = dimension_report(ctx);
                const RankBounds sigma = rank_bounds(ctx, true);
                auto fail = [&](const char* what) { bad.push_back({ctx, what}); };

                if (ctx.s != 2 * n || ctx.m != 2 * l) {
                    fail("s = 2n and m = 2l");
                }
                const int gap = (l < n) ? l : l - 1;
                if (r.spine_dim - r.vcd != gap) {
                    fail("spine_dim - vcd");
                }
                if (r.decorated_nonorientable != r.ideal_triangulation_dim) {
                    fail("decorated dimension = 3g + 2n + l - 4");
                }
                if (sigma.max_rank - sigma.min_filling_rank != 2 * r.spine_dim) {
                    fail("max_rank - min_rank(sigma) = 2 spine_dim");
                }
                if (sigma.max_rank != r.arc_complex_dim) {
                    fail("max_rank = arc complex dimension");
                }
                if (sigma.max_rank % 2 == 0 || sigma.min_filling_rank % 2 == 0) {
                    fail("sigma ranks are odd");
                }
                if (maximal_arc_count(ctx) != 2 * (3 * ctx.g + 2 * n + l - 3)) {
                    fail("maximal arc count = 2(3g + 2n + l - 3)");
                }
                // The sigma-fixed part of the maximal simplex has one vertex per
                // orbit, so its dimension is the ideal triangulation dimension.
                if (maximal_arc_count(ctx) / 2 - 1 != r.ideal_triangulation_dim) {
                    fail("orbit count of a maximal system");
                }
            }
        }
    }
    if (visited != nullptr) {
        *visited = count;
    }
    return bad;
}

}  // namespace arcspine
