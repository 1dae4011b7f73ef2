// arcspine: command-line front end for the arc-system library.
//
// Exit codes: 0 verified, 1 property violation, 2 invalid input,
// 3 budget exhausted without a verdict. Relative output paths are resolved
// against $ARCSPINE_OUT_DIR when it is set.

#include "arcspine/complexes.hpp"
#include "arcspine/constructions.hpp"
#include "arcspine/enumerate.hpp"
#include "arcspine/involution.hpp"
#include "arcspine/map_io.hpp"
#include "arcspine/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace arcspine;

namespace {

struct Globals {
    bool json_output = false;
    int workers = 1;
    std::uint64_t seed = 1;
    std::uint64_t budget = 2'000'000;
};

struct ContextArgs {
    int genus_n = 1;
    int punctures = 2;
    int marked = 1;
};

fs::path output_path(const std::string& given) {
    fs::path p(given);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("ARCSPINE_OUT_DIR"); dir != nullptr && *dir != '\0') {
            return fs::path(dir) / p;
        }
    }
    return p;
}

void emit(const Globals& g, const json& doc) {
    if (g.json_output) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    for (const auto& [key, value] : doc.items()) {
        std::cout << std::left << std::setw(26) << key << " " << (value.is_string() ? value.get<std::string>() : value.dump())
                  << "\n";
    }
}

struct LoadedMap {
    std::shared_ptr<const CombinatorialMap> map;
    std::optional<std::vector<Dart>> involution;
};

LoadedMap load(const std::string& path) {
    MapFile file = read_map_file(path);
    LoadedMap out;
    out.map = std::make_shared<const CombinatorialMap>(build_map(file.data));
    out.involution = std::move(file.involution);
    return out;
}

/// The file's involution if present, otherwise the first one found.
std::optional<DeckInvolution> sigma_of(const LoadedMap& m) {
    if (m.involution) {
        return check_involution(*m.map, *m.involution);
    }
    std::vector<DeckInvolution> found = find_deck_involutions(*m.map);
    if (found.empty()) {
        return std::nullopt;
    }
    return found.front();
}

std::vector<int> parse_edges(const std::string& text) {
    std::vector<int> edges;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            edges.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw Error(ErrorCode::Io, "bad edge id '" + item + "'");
        }
    }
    return edges;
}

json violations_json(const std::vector<Violation>& violations) {
    json out = json::array();
    for (const Violation& v : violations) {
        out.push_back({{"code", to_string(v.code)}, {"detail", v.detail}});
    }
    return out;
}

std::optional<CoverContext> context_of(const CombinatorialMap& map) {
    try {
        return cover_from_upstairs(map.genus(), map.point_count(), map.marked_count());
    } catch (const Error&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------

int run_formulas(const Globals& g, const ContextArgs& c) {
    const CoverContext ctx = cover_signature(c.genus_n, c.punctures, c.marked);
    const RankBounds sigma = rank_bounds(ctx, true);
    const RankBounds plain = rank_bounds(ctx, false);
    json doc = to_json(dimension_report(ctx));
    doc["context"] = describe(ctx);
    doc["min_filling_rank_sigma"] = sigma.min_filling_rank;
    doc["min_filling_rank"] = plain.min_filling_rank;
    doc["max_rank"] = sigma.max_rank;
    emit(g, doc);
    return kExitPass;
}

int run_validate(const Globals& g, const std::string& path) {
    const MapFile file = read_map_file(path);
    std::vector<Violation> violations = validate_map(file.data);
    json doc{{"file", path}};
    if (violations.empty()) {
        const CombinatorialMap map = build_map(file.data);
        doc["vertices"] = map.vertex_count();
        doc["edges"] = map.edge_count();
        doc["faces"] = map.face_count();
        doc["genus"] = map.genus();
        if (file.involution) {
            const auto more = involution_violations(map, *file.involution);
            violations.insert(violations.end(), more.begin(), more.end());
        }
    }
    doc["valid"] = violations.empty();
    doc["violations"] = violations_json(violations);
    emit(g, doc);
    return violations.empty() ? kExitPass : kExitViolation;
}

int run_check(const Globals& g, const std::string& path, const std::string& edge_text, bool fill, bool maximal) {
    const LoadedMap m = load(path);
    const ArcSubsystem sys(m.map, parse_edges(edge_text));
    const bool valid = is_valid(sys);
    const bool fills = valid && fills_up(sys);
    const bool is_max = valid && is_maximal(sys);
    json regions = json::array();
    for (const Region& r : split_components(sys)) {
        regions.push_back(to_json(r));
    }
    json doc{{"valid", valid}, {"fills", fills}, {"maximal", is_max}, {"rank", sys.rank()}, {"regions", regions}};
    emit(g, doc);
    const bool ok = valid && (!fill || fills) && (!maximal || is_max);
    return ok ? kExitPass : kExitViolation;
}

int run_check_sigma(const Globals& g, const std::string& path) {
    const LoadedMap m = load(path);
    json doc{{"file", path}};
    std::optional<DeckInvolution> sigma;
    if (m.involution) {
        const auto violations = involution_violations(*m.map, *m.involution);
        doc["source"] = "file";
        doc["violations"] = violations_json(violations);
        if (violations.empty()) {
            sigma = check_involution(*m.map, *m.involution);
        }
    } else {
        doc["source"] = "search";
        const auto found = find_deck_involutions(*m.map);
        doc["candidates"] = found.size();
        if (!found.empty()) {
            sigma = found.front();
        }
    }
    doc["involution_valid"] = sigma.has_value();
    if (sigma) {
        const ArcSubsystem full = ArcSubsystem::full(m.map);
        json orbits = json::array();
        for (const auto& [a, b] : sigma->edge_orbits()) {
            orbits.push_back({a, b});
        }
        doc["sigma_invariant"] = is_sigma_invariant(full, *sigma);
        doc["edge_orbits"] = orbits;
        doc["involution"] = sigma->darts();
    }
    emit(g, doc);
    return sigma ? kExitPass : kExitViolation;
}

// Restricts a bundle's ambient to a sigma-invariant subset, carrying sigma along.
std::pair<CombinatorialMap, std::vector<Dart>> restrict_to(const ConstructionBundle& b, const ArcSubsystem& sys) {
    std::vector<int> removed;
    for (int e = 0; e < b.ambient->edge_count(); ++e) {
        if (!sys.contains(e)) {
            removed.push_back(e);
        }
    }
    if (removed.empty()) {
        return {*b.ambient, b.sigma.darts()};
    }
    EdgeDeletion cut = delete_edges(*b.ambient, removed);
    if (!cut.reduced) {
        throw Error(ErrorCode::ConstructionFailed, "subsystem does not cut the surface into disks");
    }
    std::vector<Dart> renumber(b.ambient->dart_count(), -1);
    int next = 0;
    for (Dart d = 0; d < b.ambient->dart_count(); ++d) {
        if (sys.contains(b.ambient->edge_of(d))) {
            renumber[d] = next++;
        }
    }
    std::vector<Dart> iota(next);
    for (Dart d = 0; d < b.ambient->dart_count(); ++d) {
        if (renumber[d] >= 0) {
            iota[renumber[d]] = renumber[b.sigma(d)];
        }
    }
    check_involution(*cut.reduced, iota);
    return {std::move(*cut.reduced), std::move(iota)};
}

int run_construct(const Globals& g, const std::string& kind, const ContextArgs& c, const std::string& out) {
    const CoverContext ctx = cover_signature(c.genus_n, c.punctures, c.marked);
    const ConstructionBundle b = build_constructions(ctx);
    const auto items = certify(b);
    bool pass = true;
    for (const CertificateItem& item : items) {
        pass = pass && item.pass;
    }
    const ArcSubsystem& chosen = kind == "base" ? b.subset_B : kind == "min" ? b.subset_Bmin : b.chain.back();
    const auto [map, iota] = restrict_to(b, chosen);

    const fs::path map_path = output_path(out);
    if (map_path.has_parent_path()) {
        fs::create_directories(map_path.parent_path());
    }
    write_map_file(map_path, map, &iota);
    fs::path cert_path = map_path;
    cert_path.replace_extension(".certificate.json");

    json chain = json::array();
    for (const ArcSubsystem& member : b.chain) {
        chain.push_back(member.edges());
    }
    json cert{{"kind", kind},
              {"context", to_json(ctx)},
              {"ambient_edges", b.ambient->edge_count()},
              {"subset_edges", chosen.edges()},
              {"B", b.subset_B.edges()},
              {"B_min", b.subset_Bmin.edges()},
              {"certificate", to_json(items)},
              {"pass", pass}};
    if (kind == "chain") {
        cert["chain"] = chain;
        cert["inclusions"] = b.chain.size() - 1;
    }
    write_json_file(cert_path, cert);

    json doc{{"kind", kind}, {"context", describe(ctx)}, {"map", map_path.string()},
             {"certificate", cert_path.string()}, {"edges", map.edge_count()}, {"pass", pass}};
    if (kind == "chain") {
        doc["chain"] = chain;
    }
    emit(g, doc);
    return pass ? kExitPass : kExitViolation;
}

int run_poset(const Globals& g, const std::string& path, bool sigma_only, bool filling, const std::string& report) {
    const LoadedMap m = load(path);
    std::optional<DeckInvolution> sigma = sigma_of(m);
    if (sigma_only && !sigma) {
        throw Error(ErrorCode::NotSigmaInvariant, "map carries no deck involution");
    }
    PosetOptions options;
    options.workers = g.workers;
    const FillingPoset p = build_poset(m.map, sigma ? &*sigma : nullptr, {filling, sigma_only}, options);
    json nodes = json::array();
    for (EdgeMask mask : p.nodes) {
        nodes.push_back(mask_edges(mask));
    }
    const ChainWitness chain = longest_chain(p);
    json doc{{"edges", p.edge_count},
             {"filling", filling},
             {"sigma", sigma_only},
             {"node_count", p.nodes.size()},
             {"min_rank", min_rank(p.nodes)},
             {"longest_chain", to_json(chain)}};
    json full = doc;
    full["nodes"] = nodes;
    if (!report.empty()) {
        write_json_file(output_path(report), full);
        doc["report"] = output_path(report).string();
    }
    emit(g, doc);
    return kExitPass;
}

int run_spine_dim(const Globals& g, const std::string& path) {
    const LoadedMap m = load(path);
    const std::optional<DeckInvolution> sigma = sigma_of(m);
    if (!sigma) {
        throw Error(ErrorCode::NotSigmaInvariant, "map carries no deck involution");
    }
    PosetOptions options;
    options.workers = g.workers;
    const FillingPoset p = build_poset(m.map, &*sigma, {true, true}, options);
    const ChainWitness chain = longest_chain(p);
    json doc{{"longest_chain", chain.length}, {"witness", to_json(chain)["witness"]}};
    int code = kExitPass;
    if (const auto ctx = context_of(*m.map)) {
        doc["spine_dim"] = spine_dimension(*ctx);
        code = chain.length <= spine_dimension(*ctx) ? kExitPass : kExitViolation;
    }
    emit(g, doc);
    return code;
}

int run_collapse(const Globals& g, const std::string& path, const std::string& trace_path) {
    const LoadedMap m = load(path);
    const std::optional<DeckInvolution> sigma = sigma_of(m);
    PosetOptions options;
    options.workers = g.workers;
    const FillingPoset all = build_poset(m.map, sigma ? &*sigma : nullptr, {}, options);
    const CollapseTrace trace = weight_stratified_collapse(all, options);
    const json full = to_json(trace);
    if (!trace_path.empty()) {
        write_json_file(output_path(trace_path), full);
    }
    json doc{{"stages", trace.stages.size()},
             {"ends_at_filling_poset", trace.ends_at_filling_poset},
             {"betti_constant", trace.betti_constant},
             {"all_sigma_stable", trace.all_sigma_stable},
             {"final_betti", trace.stages.back().betti}};
    if (!trace_path.empty()) {
        doc["trace"] = output_path(trace_path).string();
    }
    emit(g, doc);
    const bool ok = trace.ends_at_filling_poset && trace.betti_constant && trace.all_sigma_stable;
    return ok ? kExitPass : kExitViolation;
}

int run_enumerate(const Globals& g, int genus, int s, int m, bool sigma_only, const std::string& out_dir) {
    const CoverContext ctx = cover_from_upstairs(genus, s, m);
    EnumerateOptions options;
    options.budget = g.budget;
    options.workers = g.workers;
    WalkOptions walk;
    walk.seed = g.seed;

    std::vector<SigmaAmbient> ambients;
    bool exhaustive = false;
    std::uint64_t expansions = 0;
    int walk_steps = 0;
    if (sigma_only) {
        SigmaEnumeration e = enumerate_sigma_maximal(ctx, options, walk);
        ambients = std::move(e.ambients);
        exhaustive = e.exhaustive;
        expansions = e.expansions;
        walk_steps = e.walk_steps;
    } else {
        Enumeration e = enumerate_maximal(ctx, options);
        for (CombinatorialMap& map : e.maps) {
            ambients.push_back({std::make_shared<const CombinatorialMap>(std::move(map)), {}});
        }
        exhaustive = e.exhaustive;
        expansions = e.expansions;
    }

    const fs::path dir = output_path(out_dir);
    fs::create_directories(dir);
    PosetOptions poset;
    poset.workers = g.workers;
    int min_filling = -1;
    int min_sigma = -1;
    int max_chain = -1;
    std::uint64_t odd = 0;
    bool stats = true;
    for (std::size_t i = 0; i < ambients.size(); ++i) {
        const SigmaAmbient& a = ambients[i];
        std::ostringstream name;
        name << "type_" << std::setw(4) << std::setfill('0') << i << ".json";
        write_map_file(dir / name.str(), *a.map, sigma_only ? &a.sigma.darts() : nullptr);
        if (a.map->edge_count() > poset.edge_cap) {
            stats = false;
            continue;
        }
        const AmbientStats st = ambient_stats(a.map, sigma_only ? &a.sigma : nullptr, poset);
        auto lower = [](int& slot, int v) {
            if (v >= 0 && (slot < 0 || v < slot)) {
                slot = v;
            }
        };
        lower(min_filling, st.min_filling_rank);
        lower(min_sigma, st.min_sigma_filling_rank);
        max_chain = std::max(max_chain, st.max_sigma_chain);
        odd += st.odd_sigma_subsets;
    }
    json summary{{"context", to_json(ctx)},
                 {"sigma", sigma_only},
                 {"mode", exhaustive ? "EXACT" : "SAMPLED"},
                 {"types", ambients.size()},
                 {"expansions", expansions},
                 {"budget", g.budget},
                 {"seed", g.seed},
                 {"walk_steps", walk_steps}};
    if (stats) {
        summary["min_filling_rank"] = {{"observed", min_filling}, {"bound", rank_bounds(ctx, false).min_filling_rank}};
        if (sigma_only) {
            summary["min_sigma_filling_rank"] = {{"observed", min_sigma},
                                                 {"bound", rank_bounds(ctx, true).min_filling_rank}};
            summary["max_sigma_chain"] = {{"observed", max_chain}, {"spine_dim", spine_dimension(ctx)}};
            summary["odd_sigma_subsets"] = odd;
        }
    }
    write_json_file(dir / "summary.json", summary);
    summary["out_dir"] = dir.string();
    emit(g, summary);
    return exhaustive ? kExitPass : kExitBudget;
}

int run_verify(const Globals& g, const ContextArgs& c, const std::string& report_path) {
    const CoverContext ctx = cover_signature(c.genus_n, c.punctures, c.marked);
    VerifyOptions options;
    options.seed = g.seed;
    options.budget = g.budget;
    options.workers = g.workers;
    const VerifyReport report = run_verification(ctx, options);
    if (!report_path.empty()) {
        write_json_file(output_path(report_path), report.document);
    }
    if (g.json_output || report_path.empty()) {
        std::cout << report.document.dump(2) << "\n";
    } else {
        for (const VerifyCheck& check : report.checks) {
            const char* status = check.status == CheckStatus::Pass   ? "PASS"
                                 : check.status == CheckStatus::Fail ? "FAIL"
                                                                     : "BUDGET";
            std::cout << std::left << std::setw(28) << check.name << status << "\n";
        }
    }
    return report.exit_code;
}

void add_context_options(CLI::App* cmd, ContextArgs& c) {
    cmd->add_option("--genus-n", c.genus_n, "Genus of the non-orientable surface N")->required();
    cmd->add_option("--punctures", c.punctures, "Punctures n of N")->required();
    cmd->add_option("--marked", c.marked, "Marked points l of N")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arc systems, deck involutions and spines on orientable double covers"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json_output, "Print structured JSON");
    app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for flip walks");
    app.add_option("--budget", g.budget, "Search-node budget for enumeration");
    app.fallthrough();

    ContextArgs ctx_args;
    std::string map_path, edges, report, trace, out, out_dir, kind;
    bool fill = false, maximal = false, sigma = false, filling = false;
    int genus = 0, s = 0, m = 0;

    auto* formulas = app.add_subcommand("formulas", "Dimension and rank formulas for a context");
    add_context_options(formulas, ctx_args);

    auto* validate = app.add_subcommand("validate", "Validate a map file");
    validate->add_option("file", map_path, "Map file")->required();

    auto* check = app.add_subcommand("check", "Classify an edge subset of a map");
    check->add_option("--map", map_path, "Map file")->required();
    check->add_option("--edges", edges, "Comma-separated edge ids")->required();
    check->add_flag("--fill", fill, "Require the subset to fill");
    check->add_flag("--maximal", maximal, "Require the subset to be maximal");

    auto* check_sigma = app.add_subcommand("check-sigma", "Check or find the deck involution of a map");
    check_sigma->add_option("--map", map_path, "Map file")->required();

    auto* construct = app.add_subcommand("construct", "Write a constructed system and its certificate");
    construct->add_option("kind", kind, "base, min, max or chain")
        ->required()
        ->check(CLI::IsMember({"base", "min", "max", "chain"}));
    add_context_options(construct, ctx_args);
    construct->add_option("--out", out, "Output map file")->required();

    auto* poset = app.add_subcommand("poset", "Subsystem poset of a map");
    poset->add_option("--map", map_path, "Map file")->required();
    poset->add_flag("--sigma", sigma, "Only sigma-invariant subsystems");
    poset->add_flag("--filling", filling, "Only filling subsystems");
    poset->add_option("--report", report, "JSON report file");

    auto* spine = app.add_subcommand("spine-dim", "Longest sigma-invariant filling chain of a map");
    spine->add_option("--map", map_path, "Map file")->required();

    auto* collapse = app.add_subcommand("collapse", "Weight-ordered removal of non-filling systems");
    collapse->add_option("--map", map_path, "Map file")->required();
    collapse->add_option("--trace", trace, "JSON trace file");

    auto* enumerate = app.add_subcommand("enumerate", "Enumerate maximal systems on F_g");
    enumerate->add_option("--genus", genus, "Genus g of the cover")->required();
    enumerate->add_option("--punctures-up", s, "Points s on the cover")->required();
    enumerate->add_option("--marked-up", m, "Marked points m on the cover")->required();
    enumerate->add_flag("--sigma", sigma, "Only types carrying a deck involution");
    enumerate->add_option("--out-dir", out_dir, "Output directory")->required();

    auto* verify = app.add_subcommand("verify", "Run the full verification pipeline");
    add_context_options(verify, ctx_args);
    verify->add_option("--report", report, "JSON report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInvalidInput;
    }

    try {
        if (*formulas) return run_formulas(g, ctx_args);
        if (*validate) return run_validate(g, map_path);
        if (*check) return run_check(g, map_path, edges, fill, maximal);
        if (*check_sigma) return run_check_sigma(g, map_path);
        if (*construct) return run_construct(g, kind, ctx_args, out);
        if (*poset) return run_poset(g, map_path, sigma, filling, report);
        if (*spine) return run_spine_dim(g, map_path);
        if (*collapse) return run_collapse(g, map_path, trace);
        if (*enumerate) return run_enumerate(g, genus, s, m, sigma, out_dir);
        if (*verify) return run_verify(g, ctx_args, report);
    } catch (const MapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const Violation& v : e.violations()) {
            std::cerr << "  " << to_string(v.code) << ": " << v.detail << "\n";
        }
        return kExitInvalidInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::BudgetExceeded ? kExitBudget : kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}
