#include "gma/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "gma/errors.hpp"
#include "json.hpp"

namespace gma {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
    case Status::info: return "info";
  }
  return "error";
}

CheckResult residual_check(std::string name, double residual, double tol, std::string anchor) {
  CheckResult r;
  r.name = std::move(name);
  r.residual = residual;
  r.status = residual <= tol ? Status::pass : Status::fail;
  r.anchor = std::move(anchor);
  return r;
}

std::string error_kind_of(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return "validation";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const IllConditionedError*>(&e)) return "ill-conditioned";
  if (dynamic_cast<const SingularityError*>(&e)) return "ill-conditioned";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
  if (dynamic_cast<const EnumerationCapError*>(&e)) return "enumeration-cap";
  return "numeric";
}

CheckResult error_result(std::string name, const std::exception& e, std::string anchor) {
  CheckResult r;
  r.name = std::move(name);
  r.status = Status::error;
  r.residual = std::nan("");
  r.witnesses.push_back(e.what());
  r.anchor = std::move(anchor);
  r.error_kind = error_kind_of(e);
  return r;
}

int Report::exit_code() const {
  bool validation = false, ill = false, failed = false;
  for (const auto& c : checks) {
    if (c.status == Status::error) {
      validation = validation || c.error_kind == "validation";
      ill = ill || c.error_kind == "ill-conditioned";
      failed = true;
    }
    if (c.status == Status::fail) failed = true;
  }
  if (validation) return 2;
  if (ill) return 3;
  return failed ? 1 : 0;
}

namespace {

std::string fmt_residual(double x) {
  if (std::isnan(x)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

} // namespace

std::string report_to_text(const Report& r) {
  std::ostringstream out;
  out << "model: " << r.model << "  (tol " << r.tol << ", seed " << r.seed << ", samples " << r.samples << ")\n";
  std::size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  int counts[4] = {0, 0, 0, 0};
  for (const auto& c : r.checks) {
    ++counts[static_cast<int>(c.status)];
    std::string status = to_string(c.status);
    if (c.status == Status::info && !c.verdict.empty()) status += "(" + c.verdict + ")";
    out << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << status
        << std::string(status.size() < 11 ? 11 - status.size() : 1, ' ') << fmt_residual(c.residual);
    if (!c.anchor.empty()) out << "  [" << c.anchor << "]";
    out << "\n";
    for (const auto& w : c.witnesses) out << "      " << w << "\n";
  }
  out << "summary: " << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " error, " << counts[3]
      << " info; exit " << r.exit_code() << "\n";
  return out.str();
}

std::string report_to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["model"] = r.model;
  j["options"] = {{"tol", r.tol}, {"seed", r.seed}, {"samples", r.samples}};
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    if (std::isfinite(c.residual))
      e["residual"] = c.residual;
    else
      e["residual"] = nullptr;
    e["witnesses"] = c.witnesses;
    e["anchor"] = c.anchor;
    if (!c.verdict.empty()) e["verdict"] = c.verdict;
    if (!c.error_kind.empty()) e["error_kind"] = c.error_kind;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  j["exit_code"] = r.exit_code();
  return j.dump(2);
}

} // namespace gma
