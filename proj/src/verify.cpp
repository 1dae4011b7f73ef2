#include "arcspine/verify.hpp"

#include "arcspine/map_io.hpp"


namespace arcspine {

using nlohmann::json;

json to_json(const CoverContext& ctx) {
    return json{{"genus_n", ctx.nonorientable_genus()}, {"n", ctx.n}, {"l", ctx.l},
                {"g", ctx.g},                          {"s", ctx.s}, {"m", ctx.m}};
}

json to_json(const DimensionReport& r) {
    return json{{"teich_orientable", r.teich_orientable},
                {"teich_nonorientable", r.teich_nonorientable},
                {"decorated_nonorientable", r.decorated_nonorientable},
                {"ideal_triangulation_dim", r.ideal_triangulation_dim},
                {"spine_dim", r.spine_dim},
                {"vcd", r.vcd},
                {"arc_complex_dim", r.arc_complex_dim}};
}

json to_json(const Region& r) {
    return json{{"euler_char", r.euler_char},
                {"boundary_corner_arcs", r.boundary_corner_arcs},
                {"punctures_inside", r.punctures_inside},
                {"interior_marked", r.interior_marked},
                {"doubled_euler", doubled_euler(r)}};
}

json to_json(const std::vector<CertificateItem>& items) {
    json out = json::array();
    for (const CertificateItem& item : items) {
        out.push_back({{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
    }
    return out;
}

json mask_edges(EdgeMask mask) {
    json out = json::array();
    for (int e = 0; mask != 0; ++e, mask >>= 1) {
        if (mask & 1u) {
            out.push_back(e);
        }
    }
    return out;
}

json to_json(const ChainWitness& chain) {
    json members = json::array();
    for (EdgeMask m : chain.chain) {
        members.push_back(mask_edges(m));
    }
    return json{{"length", chain.length}, {"witness", members}};
}

json to_json(const CollapseTrace& trace) {
    json stages = json::array();
    for (const CollapseStage& s : trace.stages) {
        stages.push_back({{"removed_rank", s.removed_rank},
                          {"removed", s.removed.size()},
                          {"remaining", s.remaining},
                          {"betti", s.betti},
                          {"sigma_stable", s.sigma_stable}});
    }
    return json{{"stages", stages},
                {"ends_at_filling_poset", trace.ends_at_filling_poset},
                {"betti_constant", trace.betti_constant},
                {"all_sigma_stable", trace.all_sigma_stable}};
}

json to_json(const BoundSweep& s) {
    return json{{"mode", s.exact ? "EXACT" : "SAMPLED"},
                {"ambients", s.ambient_count},
                {"sigma_ambients", s.sigma_ambient_count},
                {"min_filling_rank", {{"observed", s.observed_min_filling_rank},
                                      {"bound", s.plain.min_filling_rank}}},
                {"min_sigma_filling_rank", {{"observed", s.observed_min_sigma_filling_rank},
                                            {"bound", s.sigma.min_filling_rank}}},
                {"max_sigma_chain", {{"observed", s.observed_max_sigma_chain}, {"spine_dim", s.spine_dim}}},
                {"parity", {{"subsets", s.parity_subsets}, {"odd", s.parity_exceptions}}},
                {"consistent", s.consistent},
                {"attained", s.attained}};
}

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass:
            return "PASS";
        case CheckStatus::Fail:
            return "FAIL";
        case CheckStatus::Budget:
            return "BUDGET";
    }
    return "FAIL";
}

CheckStatus verdict(bool pass) { return pass ? CheckStatus::Pass : CheckStatus::Fail; }

std::string to_hex(const std::string& bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned char c : bytes) {
        out += digits[c >> 4];
        out += digits[c & 15];
    }
    return out;
}

}  // namespace

VerifyReport run_verification(const CoverContext& ctx, const VerifyOptions& options) {
    VerifyReport report;
    auto record = [&](std::string name, CheckStatus status, json detail) {
        report.checks.push_back({std::move(name), status, std::move(detail)});
    };
    // Runs one stage; budget exhaustion downgrades it instead of aborting.
    auto stage = [&](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const Error& e) {
            const CheckStatus status = e.code() == ErrorCode::BudgetExceeded ? CheckStatus::Budget : CheckStatus::Fail;
            record(name, status, json{{"error", to_string(e.code())}, {"message", e.what()}});
        }
    };

    PosetOptions poset;
    poset.edge_cap = options.edge_cap;
    poset.workers = options.workers;
    EnumerateOptions enumerate;
    enumerate.budget = options.budget;
    enumerate.workers = options.workers;
    WalkOptions walk;
    walk.seed = options.seed;
    walk.target = options.walk_target;

    stage("formula_identities", [&] {
        int visited = 0;
        const auto violations = check_formula_grid(10, 10, &visited);
        const DimensionReport d = dimension_report(ctx);
        const bool local = d.decorated_nonorientable == d.ideal_triangulation_dim &&
                           d.spine_dim - d.vcd == (ctx.l < ctx.n ? ctx.l : ctx.l - 1) &&
                           rank_bounds(ctx, true).max_rank - rank_bounds(ctx, true).min_filling_rank ==
                               2 * d.spine_dim;
        json failures = json::array();
        for (const FormulaViolation& v : violations) {
            failures.push_back({{"context", to_json(v.ctx)}, {"identity", v.identity}});
        }
        record("formula_identities", verdict(violations.empty() && local),
               json{{"grid_contexts", visited}, {"violations", failures}});
    });

    std::optional<ConstructionBundle> bundle;
    stage("construction_certificates", [&] {
        bundle = build_constructions(ctx);
        const auto items = certify(*bundle);
        bool pass = true;
        json failed = json::array();
        for (const CertificateItem& item : items) {
            pass = pass && item.pass;
            if (!item.pass) {
                failed.push_back({{"name", item.name}, {"detail", item.detail}});
            }
        }
        json detail{{"items", items.size()}, {"failed", failed},
                    {"edges", bundle->ambient->edge_count()},
                    {"B", bundle->subset_B.size()},
                    {"B_min", bundle->subset_Bmin.size()},
                    {"chain_inclusions", bundle->chain.size() - 1}};
        if (!pass) {
            detail["counterexample"] = map_to_json(*bundle->ambient, &bundle->sigma.darts());
        }
        record("construction_certificates", verdict(pass), detail);
    });

    std::optional<BoundSweep> sweep;
    stage("parity_sweep", [&] {
        sweep = sweep_bounds(ctx, enumerate, walk);
        json detail{{"mode", sweep->exact ? "EXACT" : "SAMPLED"},
                    {"sigma_ambients", sweep->sigma_ambient_count},
                    {"subsets", sweep->parity_subsets},
                    {"odd", sweep->parity_exceptions}};
        for (const AmbientStats& a : sweep->sigma_stats) {
            if (a.odd_sigma_subsets != 0) {
                detail["counterexample"] = to_hex(a.form);
                break;
            }
        }
        record("parity_sweep", verdict(sweep->parity_exceptions == 0 && sweep->sigma_ambient_count > 0), detail);
    });

    if (!sweep) {
        record("rank_bound_sweep", report.checks.back().status, json{{"error", "sweep unavailable"}});
    } else {
        stage("rank_bound_sweep", [&] {
            const bool pass = sweep->consistent && (!sweep->exact || sweep->attained);
            json detail = to_json(*sweep);
            if (!pass) {
                json offenders = json::array();
                for (const AmbientStats& a : sweep->sigma_stats) {
                    if (a.min_sigma_filling_rank < sweep->sigma.min_filling_rank ||
                        a.max_sigma_chain > sweep->spine_dim) {
                        offenders.push_back({{"form", to_hex(a.form)},
                                             {"min_sigma_filling_rank", a.min_sigma_filling_rank},
                                             {"max_sigma_chain", a.max_sigma_chain}});
                    }
                }
                detail["counterexamples"] = offenders;
            }
            record("rank_bound_sweep", verdict(pass), detail);
        });
    }

    if (!bundle) {
        for (const char* name : {"spine_dimension", "collapse_trace"}) {
            record(name, CheckStatus::Fail, json{{"error", "construction unavailable"}});
        }
    } else {
        stage("spine_dimension", [&] {
            const FillingPoset p = build_poset(bundle->ambient, &bundle->sigma, {true, true}, poset);
            const ChainWitness chain = longest_chain(p);
            const int spine = spine_dimension(ctx);
            record("spine_dimension", verdict(chain.length == spine),
                   json{{"spine_dim", spine}, {"vcd", dimension_report(ctx).vcd},
                        {"nodes", p.nodes.size()}, {"longest_chain", to_json(chain)}});
        });
        stage("collapse_trace", [&] {
            const FillingPoset all = build_poset(bundle->ambient, &bundle->sigma, {}, poset);
            const CollapseTrace trace = weight_stratified_collapse(all, poset);
            bool contractible = true;
            for (const CollapseStage& s : trace.stages) {
                contractible = contractible && !s.betti.empty() && s.betti[0] == 1;
                for (std::size_t k = 1; k < s.betti.size(); ++k) {
                    contractible = contractible && s.betti[k] == 0;
                }
            }
            record("collapse_trace",
                   verdict(trace.ends_at_filling_poset && trace.betti_constant && trace.all_sigma_stable &&
                           contractible),
                   to_json(trace));
        });
    }

    json checks = json::array();
    bool fail = false;
    bool budget = false;
    for (const VerifyCheck& c : report.checks) {
        fail = fail || c.status == CheckStatus::Fail;
        budget = budget || c.status == CheckStatus::Budget;
        checks.push_back({{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
    }
    report.exit_code = fail ? kExitViolation : budget ? kExitBudget : kExitPass;
    report.document = json{{"context", to_json(ctx)},
                           {"dimensions", to_json(dimension_report(ctx))},
                           {"seed", options.seed},
                           {"budget", options.budget},
                           {"checks", checks},
                           {"verdict", fail ? "FAIL" : budget ? "BUDGET" : "PASS"}};
    return report;
}

}  // namespace arcspine
