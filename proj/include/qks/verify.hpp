#pragma once

// Named identity checks grouped into suites.  Failures are data: each report
// carries the worst error, the first failing point and a command line that
// reruns the suite.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qks {

enum class CheckMode { Exact, Quadrature, SeriesAgreement };
enum class CheckStatus { Pass, Fail, Skipped };
enum class Suite {
  ExactAlgebra,
  Quadrature,
  KernelAgreement,
  Negativity,
  ClassicalLimit,
  All
};

const char* mode_name(CheckMode m);
const char* status_name(CheckStatus s);
const char* suite_name(Suite s);
std::optional<Suite> parse_suite(const std::string& name);

struct IdentityReport {
  std::string identity_id;
  CheckMode mode = CheckMode::Exact;
  CheckStatus status = CheckStatus::Pass;
  std::optional<double> max_abs_error;
  /// Parameters and point of the first failure, plus a rerun command.
  std::optional<std::string> witness;
  /// The formula being checked, in plain text.
  std::string anchor;
  std::optional<std::string> note;
  int cases = 0;
};

struct SuiteConfig {
  int exact_degree = 6;
  int quadrature_degree = 10;
  int quadrature_nodes = 256;
  int cube_nodes = 32;
  std::vector<double> quadrature_qs{0.2, 0.5, 0.8};
  double kernel_q = 0.5;
  double negativity_q = 0.5;
  int negativity_grid = 21;
};

/// Reports sorted by identity_id.
std::vector<IdentityReport> run_suite(Suite suite,
                                      const SuiteConfig& config = {});

bool all_passed(const std::vector<IdentityReport>& reports);

std::string report_json(const IdentityReport& r);
void write_summary_table(std::ostream& os,
                         const std::vector<IdentityReport>& reports);

// Individual suites (sorted as run_suite does).
std::vector<IdentityReport> run_exact_suite(const SuiteConfig& config);
std::vector<IdentityReport> run_quadrature_suite(const SuiteConfig& config);
std::vector<IdentityReport> run_kernel_suite(const SuiteConfig& config);
std::vector<IdentityReport> run_negativity_suite(const SuiteConfig& config);
std::vector<IdentityReport> run_classical_suite(const SuiteConfig& config);

}  // namespace qks
