#include <algorithm>

#include "doctest.h"
#include "qhankel/errors.hpp"
#include "qhankel/report.hpp"
#include "qhankel/verify.hpp"

using namespace qhankel;

namespace {
VerifyOptions small() {
    VerifyOptions o;
    o.nmax = 5;
    o.lmax = 2;
    o.mmax = 2;
    return o;
}
}  // namespace

TEST_CASE("suite list is fixed") {
    const auto& names = suite_names();
    CHECK(names.size() == 11);
    for (const char* expected :
         {"lemma-dl", "operator-relation", "closed-form", "leading",
          "cyclotomic", "w-divisibility", "kdet", "degree-bounds",
          "conjecture-lambda1", "kronecker", "bezivin"}) {
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
    }
    CHECK_THROWS_AS(run_suite("no-such-suite", small()), UsageError);
}

TEST_CASE("closed-form suite passes") {
    SuiteReport r = run_suite("closed-form", small());
    CHECK(r.all_pass());
    CHECK(r.first_failure() == nullptr);
    CHECK(!r.checks.empty());
}

TEST_CASE("expansion suite passes at a reduced grid") {
    SuiteReport r = run_suite("lemma-dl", small());
    CHECK(r.all_pass());
}

TEST_CASE("operator relation suite passes at a reduced grid") {
    SuiteReport r = run_suite("operator-relation", small());
    CHECK(r.all_pass());
    CHECK(r.data.contains("witness_log2_C"));
}

TEST_CASE("leading and degree suites share one computation") {
    VerifyOptions o;
    o.nmax = 4;
    auto [lead, deg] = verify_leading_and_degrees(o);
    CHECK(lead.suite == "leading");
    CHECK(deg.suite == "degree-bounds");
    CHECK(lead.all_pass());
    CHECK(deg.all_pass());
}

TEST_CASE("cyclotomic suite passes at a reduced grid") {
    VerifyOptions o;
    o.nmax = 6;
    SuiteReport r = run_suite("cyclotomic", o);
    CHECK(r.all_pass());
    CHECK(r.data.contains("table"));
}

TEST_CASE("filtered divisibility suite passes at a reduced grid") {
    SuiteReport r = run_suite("w-divisibility", small());
    CHECK(r.all_pass());
}

TEST_CASE("kdet suite passes") {
    VerifyOptions o;
    o.nmax = 6;
    CHECK(run_suite("kdet", o).all_pass());
}

TEST_CASE("conjecture suite always reports cleanly") {
    VerifyOptions o;
    o.nmax = 4;
    SuiteReport r = run_suite("conjecture-lambda1", o);
    CHECK(r.all_pass());  // disagreement is data, not failure
    CHECK(r.data.contains("conjecture"));
}

TEST_CASE("kronecker suite passes at a reduced grid") {
    VerifyOptions o;
    o.nmax = 6;
    CHECK(run_suite("kronecker", o).all_pass());
}

TEST_CASE("bezivin suite passes at a reduced grid") {
    VerifyOptions o;
    o.nmax = 3;
    CHECK(run_suite("bezivin", o).all_pass());
}

TEST_CASE("numeric coherence passes at a reduced grid") {
    VerifyOptions o;
    o.nmax = 5;
    o.precision = 128;
    CHECK(verify_numeric_coherence(o).all_pass());
}

TEST_CASE("suite documents render deterministically in every format") {
    VerifyOptions o;
    o.nmax = 4;
    SuiteReport r1 = run_suite("kdet", o);
    SuiteReport r2 = run_suite("kdet", o);
    nlohmann::ordered_json d1 = suite_doc(r1), d2 = suite_doc(r2);
    CHECK(render(d1, OutFormat::json) == render(d2, OutFormat::json));
    CHECK(render(d1, OutFormat::csv) == render(d2, OutFormat::csv));
    CHECK(render(d1, OutFormat::text) == render(d2, OutFormat::text));
    CHECK(render(d1, OutFormat::csv).rfind("suite,check,pass,detail\n", 0) ==
          0);
}

TEST_CASE("failure reporting names the first failing identity") {
    SuiteReport rep;
    rep.suite = "example";
    rep.checks.push_back({"first good", true, ""});
    rep.checks.push_back({"breaks here", false, "lhs = 1 ; rhs = 2"});
    rep.checks.push_back({"also bad", false, ""});
    CHECK(!rep.all_pass());
    REQUIRE(rep.first_failure() != nullptr);
    CHECK(rep.first_failure()->name == "breaks here");
    nlohmann::ordered_json doc = suite_doc(rep);
    CHECK(doc.at("first_failure").at("name") == "breaks here");
    CHECK(doc.at("first_failure").at("detail") == "lhs = 1 ; rhs = 2");
}
