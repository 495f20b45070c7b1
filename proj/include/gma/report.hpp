#pragma once

#include <exception>
#include <string>
#include <vector>

namespace gma {

enum class Status { pass, fail, error, info };

std::string to_string(Status s);

/// Outcome of one named check. `info` checks are reported but never decide
/// the exit status; their own outcome is kept in `verdict`.
struct CheckResult {
  std::string name;
  Status status = Status::pass;
  double residual = 0.0;
  std::vector<std::string> witnesses;
  std::string anchor;
  std::string verdict;
  /// For status error: "validation", "precondition", "ill-conditioned", ...
  std::string error_kind;

  bool passed() const { return status == Status::pass; }
};

/// "validation", "precondition", "ill-conditioned", "convergence",
/// "enumeration-cap" or "numeric", from the library's error type.
std::string error_kind_of(const std::exception& e);

/// A check that could not run.
CheckResult error_result(std::string name, const std::exception& e, std::string anchor);

/// Pass when residual <= tol, fail otherwise.
CheckResult residual_check(std::string name, double residual, double tol, std::string anchor);

struct Report {
  std::string model;
  double tol = 1e-8;
  unsigned long long seed = 0;
  int samples = 200;
  std::vector<CheckResult> checks;

  void add(CheckResult r) { checks.push_back(std::move(r)); }
  void append(const std::vector<CheckResult>& rs) { checks.insert(checks.end(), rs.begin(), rs.end()); }

  /// 0 when every required check passes, 3 when an error was numerical
  /// ill-conditioning, 1 otherwise.
  int exit_code() const;
};

std::string report_to_text(const Report& r);
std::string report_to_json(const Report& r);

} // namespace gma
