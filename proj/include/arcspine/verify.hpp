#pragma once

// End-to-end verification pipeline and the JSON report fragments shared
// with the command-line tool.

#include "arcspine/complexes.hpp"
#include "arcspine/constructions.hpp"
#include "arcspine/enumerate.hpp"
#include "arcspine/surface.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace arcspine {

/// Process exit codes.
enum ExitCode : int {
    kExitPass = 0,
    kExitViolation = 1,
    kExitInvalidInput = 2,
    kExitBudget = 3,
};

nlohmann::json to_json(const CoverContext& ctx);
nlohmann::json to_json(const DimensionReport& report);
nlohmann::json to_json(const Region& region);
nlohmann::json to_json(const std::vector<CertificateItem>& items);
nlohmann::json to_json(const ChainWitness& chain);
nlohmann::json to_json(const CollapseTrace& trace);
nlohmann::json to_json(const BoundSweep& sweep);
/// Edge ids of a mask, ascending.
nlohmann::json mask_edges(EdgeMask mask);

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::uint64_t budget = 2'000'000;
    int workers = 1;
    int walk_target = 100;
    int edge_cap = 20;
};

enum class CheckStatus { Pass, Fail, Budget };

struct VerifyCheck {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    nlohmann::json detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    nlohmann::json document;
    int exit_code = kExitPass;
};

/// Formula identities, construction certificates, parity sweep, rank-bound
/// sweep, spine-dimension poset check and collapse trace, in that order.
/// The document depends only on the context and the options.
VerifyReport run_verification(const CoverContext& ctx, const VerifyOptions& options = {});

}  // namespace arcspine
