#include "qks/verify.hpp"

#include <algorithm>
#include <ostream>

#include "qks/io.hpp"

namespace qks {

const char* mode_name(CheckMode m) {
  switch (m) {
    case CheckMode::Exact: return "exact";
    case CheckMode::Quadrature: return "quadrature";
    case CheckMode::SeriesAgreement: return "series_agreement";
  }
  return "?";
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::ExactAlgebra: return "exact";
    case Suite::Quadrature: return "quadrature";
    case Suite::KernelAgreement: return "kernel";
    case Suite::Negativity: return "negativity";
    case Suite::ClassicalLimit: return "classical";
    case Suite::All: return "all";
  }
  return "?";
}

std::optional<Suite> parse_suite(const std::string& name) {
  for (Suite s : {Suite::ExactAlgebra, Suite::Quadrature, Suite::KernelAgreement,
                  Suite::Negativity, Suite::ClassicalLimit, Suite::All}) {
    if (name == suite_name(s)) return s;
  }
  return std::nullopt;
}

std::vector<IdentityReport> run_suite(Suite suite, const SuiteConfig& config) {
  std::vector<IdentityReport> out;
  auto take = [&](std::vector<IdentityReport> part) {
    out.insert(out.end(), part.begin(), part.end());
  };
  const bool all = suite == Suite::All;
  if (all || suite == Suite::ExactAlgebra) take(run_exact_suite(config));
  if (all || suite == Suite::Quadrature) take(run_quadrature_suite(config));
  if (all || suite == Suite::KernelAgreement) take(run_kernel_suite(config));
  if (all || suite == Suite::Negativity) take(run_negativity_suite(config));
  if (all || suite == Suite::ClassicalLimit) take(run_classical_suite(config));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.identity_id < b.identity_id;
  });
  return out;
}

bool all_passed(const std::vector<IdentityReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.status == CheckStatus::Fail;
  });
}

std::string report_json(const IdentityReport& r) {
  Record rec;
  rec.add("identity_id", r.identity_id)
      .add("mode", std::string(mode_name(r.mode)))
      .add("status", std::string(status_name(r.status)))
      .add("max_abs_error",
           r.max_abs_error ? Field(*r.max_abs_error) : Field(std::monostate{}))
      .add("cases", static_cast<long long>(r.cases))
      .add("witness", r.witness ? Field(*r.witness) : Field(std::monostate{}))
      .add("anchor", r.anchor)
      .add("note", r.note ? Field(*r.note) : Field(std::monostate{}));
  return to_json_line(rec);
}

void write_summary_table(std::ostream& os,
                         const std::vector<IdentityReport>& reports) {
  std::vector<Record> rows;
  for (const IdentityReport& r : reports) {
    Record rec;
    rec.add("identity", r.identity_id)
        .add("mode", std::string(mode_name(r.mode)))
        .add("status", std::string(status_name(r.status)))
        .add("cases", static_cast<long long>(r.cases))
        .add("max_abs_error", r.max_abs_error
                                  ? Field(format_double(*r.max_abs_error, 3))
                                  : Field(std::string("-")));
    rows.push_back(std::move(rec));
  }
  write_pretty(os, rows, 12);
  const auto failed = std::count_if(reports.begin(), reports.end(), [](auto& r) {
    return r.status == CheckStatus::Fail;
  });
  os << reports.size() << " identities, " << failed << " failed\n";
  for (const IdentityReport& r : reports) {
    if (r.status == CheckStatus::Fail && r.witness) {
      os << "  " << r.identity_id << ": " << *r.witness << '\n';
    }
  }
}

}  // namespace qks
