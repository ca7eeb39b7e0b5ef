#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spectra/verify.hpp"

#include <stdexcept>

using namespace spectra;

TEST_CASE("task list is fixed and an empty config is a no-op") {
    auto names = verify_task_names();
    CHECK(names.size() == 13);
    CHECK(names.front() == "spectrum-table");
    CHECK(names.back() == "character-engine");

    VerifyConfig cfg;
    CHECK(run_verify(cfg).empty());
    CHECK(all_passed({}));
    CHECK_FALSE(any_incomplete({}));
}

TEST_CASE("unknown task names and inverted ranges are rejected") {
    VerifyConfig cfg;
    cfg.tasks = {"spectrum-table", "no-such-check"};
    CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
    cfg.tasks = {"spectrum-table"};
    cfg.n_min = 5;
    cfg.n_max = 4;
    CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
}

TEST_CASE("checks pass on a small range and report skips outside their claim range") {
    VerifyConfig cfg;
    cfg.n_min = 3;
    cfg.n_max = 4;
    cfg.seed = 7;
    cfg.tasks = {"spectrum-table", "trace-identity", "coset-span-rank", "stability-distance"};
    auto results = run_verify(cfg);
    REQUIRE(results.size() == 4);
    for (const auto& r : results) {
        CAPTURE(r.name);
        CHECK(r.status == CheckStatus::pass);
        CHECK(r.seconds >= 0.0);
    }
    // stability needs n = 5, which this range excludes
    CHECK(results[3].detail.find("skipped") != std::string::npos);
    CHECK(all_passed(results));
}

TEST_CASE("an exhausted search budget surfaces as incomplete, not failure") {
    VerifyConfig cfg;
    cfg.n_min = 5;
    cfg.n_max = 5;
    cfg.budget_seconds = 1e-7;
    cfg.tasks = {"hoffman-tightness"};
    auto results = run_verify(cfg);
    REQUIRE(results.size() == 1);
    CHECK(results[0].status == CheckStatus::incomplete);
    CHECK(results[0].detail.find("budget") != std::string::npos);
    CHECK(all_passed(results));
    CHECK(any_incomplete(results));
}
