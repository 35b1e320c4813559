// One PASS/FAIL line per acceptance criterion; nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "honesty.hpp"
#include "qks/negativity.hpp"
#include "qks/verify.hpp"

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* what, double budget_s,
               const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string timing = std::to_string(secs).substr(0, 6) + " s";
  if (budget_s > 0) {
    timing += " (target < " + std::to_string(static_cast<int>(budget_s)) + " s)";
    if (secs >= budget_s) {
      o.pass = false;
      o.detail += "; runtime target missed";
    }
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s [%s] %s\n", o.pass ? "PASS" : "FAIL", n, what,
              timing.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

Outcome summarize(const std::vector<qks::IdentityReport>& reports,
                  const std::vector<std::string>& only = {}) {
  int checked = 0, failed = 0, cases = 0;
  std::string first;
  for (const auto& r : reports) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), r.identity_id) == only.end()) {
      continue;
    }
    ++checked;
    cases += r.cases;
    if (r.status == qks::CheckStatus::Fail) {
      if (failed++ == 0) first = r.identity_id + ": " + r.witness.value_or("");
    }
  }
  if (checked == 0 || (!only.empty() && checked != static_cast<int>(only.size()))) {
    return {false, "expected identities missing from the report"};
  }
  std::string detail = std::to_string(checked) + " identities, " +
                       std::to_string(cases) + " cases, " +
                       std::to_string(failed) + " failed";
  if (failed) detail += "; first: " + first;
  return {failed == 0, detail};
}

}  // namespace

int main() {
  const qks::SuiteConfig config;

  criterion(1, "exact algebra suite", 30, [&] {
    return summarize(qks::run_suite(qks::Suite::ExactAlgebra, config));
  });

  criterion(2, "quadrature suite, q in {0.2,0.5,0.8}", 300, [&] {
    return summarize(qks::run_suite(qks::Suite::Quadrature, config));
  });

  criterion(3, "kernel agreement suite at q=0.5", 120, [&] {
    return summarize(qks::run_suite(qks::Suite::KernelAgreement, config));
  });

  criterion(4, "negativity witness at q=0.5, rho13=rho23=sqrt(0.6), 21^3 grid",
            60, [&] {
    const double r = std::sqrt(0.6);
    const qks::QContext ctx(0.5);
    const auto certs = qks::search_negative(0.5, r, r, 21, ctx);
    int good = 0;
    for (const auto& c : certs) {
      if (c.sign_factor_value < 0 && c.f3d_value < -3.0 * c.f3d_tail &&
          c.neighborhood_radius > 0) {
        ++good;
      }
    }
    Outcome o;
    o.pass = !certs.empty() && good == static_cast<int>(certs.size());
    o.detail = std::to_string(certs.size()) + " certificates, " +
               std::to_string(good) + " valid";
    if (!certs.empty()) {
      const auto& c = certs.front();
      o.detail += "; e.g. f3d=" + std::to_string(c.f3d_value) +
                  " radius=" + std::to_string(c.neighborhood_radius);
    }
    return o;
  });

  criterion(5, "classical limit: Gaussian (1e-6, 27 points), Mehler (1e-8, 25 points)",
            0, [&] {
    return summarize(qks::run_suite(qks::Suite::ClassicalLimit, config),
                     {"classical.gaussian_density", "classical.mehler"});
  });

  criterion(6, "truncation honesty: doubling max_terms moves results by <= 2x tail",
            0, [&] {
    int cases = 0, violations = 0;
    std::string first;
    for (double q : {0.2, 0.5, 0.8}) {
      const auto o = qks::testing::check_honesty(
          q, {4, 8, 16, 32, qks::QContext(q).max_terms()});
      cases += o.cases;
      if (o.violations && violations == 0) first = o.first_violation;
      violations += o.violations;
    }
    std::string detail = std::to_string(cases) + " doublings, " +
                         std::to_string(violations) + " violations";
    if (violations) detail += "; first: " + first;
    return Outcome{violations == 0, detail};
  });

  return failures == 0 ? 0 : 1;
}
