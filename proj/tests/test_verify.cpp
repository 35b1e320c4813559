#include <doctest.h>

#include <set>
#include <sstream>

#include <json.hpp>

#include "qks/verify.hpp"

using namespace qks;

TEST_SUITE("verify") {
  TEST_CASE("suite names") {
    for (Suite s : {Suite::ExactAlgebra, Suite::Quadrature, Suite::KernelAgreement,
                    Suite::Negativity, Suite::ClassicalLimit, Suite::All}) {
      CHECK(parse_suite(suite_name(s)) == s);
    }
    CHECK_FALSE(parse_suite("everything").has_value());
  }

  TEST_CASE("exact suite passes with literal equality") {
    const auto reports = run_suite(Suite::ExactAlgebra);
    CHECK(all_passed(reports));
    std::set<std::string> ids;
    for (const auto& r : reports) {
      CHECK(r.mode == CheckMode::Exact);
      CHECK(r.status == CheckStatus::Pass);
      CHECK(r.cases > 0);
      CHECK_FALSE(r.anchor.empty());
      ids.insert(r.identity_id);
    }
    CHECK(ids.size() == reports.size());
    CHECK(ids.count("hermite.linearization") == 1);
    CHECK(ids.count("cn.form_equivalence") == 1);
  }

  TEST_CASE("reports are deterministic and sorted") {
    const auto a = run_suite(Suite::Negativity);
    const auto b = run_suite(Suite::Negativity);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].identity_id == b[i].identity_id);
      CHECK(a[i].max_abs_error == b[i].max_abs_error);
      CHECK(a[i].cases == b[i].cases);
      if (i) CHECK(a[i - 1].identity_id < a[i].identity_id);
    }
  }

  TEST_CASE("a failing check carries a witness and a rerun command") {
    // Too few exact degrees cannot fail, so break a tolerance instead: a
    // one-node rule cannot integrate H_n H_m.
    SuiteConfig cfg;
    cfg.quadrature_nodes = 1;
    cfg.cube_nodes = 2;
    cfg.quadrature_qs = {0.5};
    const auto reports = run_quadrature_suite(cfg);
    CHECK_FALSE(all_passed(reports));
    bool seen = false;
    for (const auto& r : reports) {
      if (r.status != CheckStatus::Fail) continue;
      seen = true;
      REQUIRE(r.witness.has_value());
      CHECK(r.witness->find("rerun: qks check --suite quadrature") !=
            std::string::npos);
    }
    CHECK(seen);
  }

  TEST_CASE("JSON report and summary table") {
    IdentityReport r;
    r.identity_id = "demo.identity";
    r.mode = CheckMode::Quadrature;
    r.status = CheckStatus::Fail;
    r.max_abs_error = 0.25;
    r.witness = "x=1; rerun: qks check --suite quadrature";
    r.anchor = "a = b";
    r.cases = 3;
    const auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["identity_id"] == "demo.identity");
    CHECK(j["mode"] == "quadrature");
    CHECK(j["status"] == "fail");
    CHECK(j["max_abs_error"].get<double>() == 0.25);
    CHECK(j["cases"] == 3);
    CHECK(j["note"].is_null());
    std::ostringstream os;
    write_summary_table(os, {r});
    CHECK(os.str().find("1 failed") != std::string::npos);
    CHECK(os.str().find("x=1; rerun") != std::string::npos);

    IdentityReport skipped;
    skipped.identity_id = "demo.empty";
    skipped.status = CheckStatus::Skipped;
    CHECK(all_passed({skipped}));
    CHECK_FALSE(all_passed({skipped, r}));
  }
}
