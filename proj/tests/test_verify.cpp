#include "arcspine/verify.hpp"

#include <doctest.h>

using namespace arcspine;

TEST_CASE("verify passes on a small context") {
    const VerifyReport r = run_verification(cover_signature(1, 2, 1));
    CHECK(r.exit_code == kExitPass);
    REQUIRE(r.checks.size() == 6);
    for (const VerifyCheck& c : r.checks) {
        CAPTURE(c.name);
        CHECK(c.status == CheckStatus::Pass);
    }
    CHECK(r.document["verdict"] == "PASS");
    CHECK(r.document["checks"][3]["detail"]["mode"] == "EXACT");
}

TEST_CASE("verify reports are reproducible") {
    VerifyOptions options;
    options.seed = 3;
    const auto a = run_verification(cover_signature(2, 2, 1), options).document.dump();
    const auto b = run_verification(cover_signature(2, 2, 1), options).document.dump();
    CHECK(a == b);
}

TEST_CASE("a tiny budget is reported, not failed") {
    VerifyOptions options;
    options.budget = 20;
    options.walk_target = 5;
    const VerifyReport r = run_verification(cover_signature(2, 2, 1), options);
    CHECK(r.checks[2].detail["mode"] == "SAMPLED");
    CHECK(r.exit_code != kExitViolation);
    CHECK(r.checks[0].status == CheckStatus::Pass);
}

TEST_CASE("json fragments") {
    CHECK(mask_edges(0b1011) == nlohmann::json::array({0, 1, 3}));
    const auto ctx = to_json(cover_signature(3, 1, 1));
    CHECK(ctx["g"] == 2);
    CHECK(ctx["s"] == 2);
    CHECK(ctx["m"] == 2);
}
