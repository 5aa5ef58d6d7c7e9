#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repfn/errors.hpp"
#include "repfn/verify.hpp"

using namespace repfn;

namespace {

const CheckResult& find(const VerifyReport& r, const std::string& name)
{
    for (const auto& c : r.checks) {
        if (c.name == name) {
            return c;
        }
    }
    FAIL("missing check " << name);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("all checks pass up to m = 10")
{
    VerifyOptions o;
    o.max_m = 10;
    o.samples = 200;
    const auto r = run_verify(o);
    CHECK(r.checks.size() == check_names().size());
    for (const auto& c : r.checks) {
        INFO(c.name << ": " << c.first_counterexample);
        CHECK(c.passed());
        CHECK(c.cases > 0);
    }
    CHECK(r.passed());
}

TEST_CASE("odd and tiny moduli")
{
    VerifyOptions o;
    o.max_m = 3;
    o.samples = 50;
    CHECK(run_verify(o).passed());
    o.max_m = 1;
    CHECK_THROWS_AS(run_verify(o), UsageError);
}

TEST_CASE("theorem sweep at m = 12 reports the split-uniformity counterexamples")
{
    VerifyOptions o;
    o.max_m = 12;
    o.scope = {"theorem", "theorem_refined", "counting", "counting_refined"};
    const auto r = run_verify(o);
    CHECK(find(r, "theorem").failures == 12 * 24);
    CHECK(find(r, "theorem").first_counterexample.find("m=12") != std::string::npos);
    CHECK(find(r, "theorem_refined").passed());
    CHECK(find(r, "counting").failures == 12);
    CHECK(find(r, "counting_refined").passed());
    CHECK_FALSE(r.passed());
    REQUIRE(r.first_failure() != nullptr);
    CHECK(r.first_failure()->name == "theorem");
}

TEST_CASE("scope filtering and JSON summary")
{
    VerifyOptions o;
    o.max_m = 6;
    o.scope = {"corollary", "construction"};
    const auto r = run_verify(o);
    REQUIRE(r.checks.size() == 2);
    const auto j = to_json(r);
    CHECK(j["passed"] == true);
    CHECK(j["checks"][0]["name"] == "corollary");
    o.scope = {"nonsense"};
    CHECK_THROWS_AS(run_verify(o), UsageError);
}
