#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "qks/errors.hpp"
#include "qks/io.hpp"
#include "qks/verify.hpp"

namespace qks::detail {

// Accumulates one identity's cases into a report.
class Tally {
 public:
  Tally(std::string id, CheckMode mode, std::string anchor, std::string rerun)
      : rerun_(std::move(rerun)) {
    report_.identity_id = std::move(id);
    report_.mode = mode;
    report_.anchor = std::move(anchor);
    if (mode != CheckMode::Exact) report_.max_abs_error = 0.0;
  }

  // |lhs - rhs| <= tol
  bool close(double lhs, double rhs, double tol,
             const std::function<std::string()>& where) {
    const double err = std::abs(lhs - rhs);
    return record(err <= tol, err, [&] {
      return where() + " lhs=" + format_double(lhs) +
             " rhs=" + format_double(rhs);
    });
  }

  bool check(bool ok, double err, const std::function<std::string()>& where) {
    return record(ok, err, where);
  }

  bool exact(bool equal, const std::function<std::string()>& where) {
    ++report_.cases;
    if (!equal) fail(where());
    return equal;
  }

  void error(const std::exception& e, const std::string& where) {
    fail(where + " raised: " + e.what());
  }

  void note(std::string text) { report_.note = std::move(text); }

  IdentityReport finish() {
    if (report_.cases == 0 && report_.status == CheckStatus::Pass) {
      report_.status = CheckStatus::Skipped;
    }
    return report_;
  }

 private:
  bool record(bool ok, double err, const std::function<std::string()>& where) {
    ++report_.cases;
    if (report_.max_abs_error && !(err <= *report_.max_abs_error)) {
      report_.max_abs_error = err;
    }
    if (!ok) fail(where());
    return ok;
  }

  void fail(const std::string& what) {
    if (report_.status != CheckStatus::Fail) {
      report_.status = CheckStatus::Fail;
      report_.witness = what + "; rerun: " + rerun_;
    }
  }

  IdentityReport report_;
  std::string rerun_;
};

inline std::string fmt(double v) { return format_double(v, 17); }

inline std::string rerun_command(const char* suite) {
  return std::string("qks check --suite ") + suite;
}

}  // namespace qks::detail
