#pragma once

#include <cstdint>

#include "gma/net.hpp"
#include "gma/report.hpp"

namespace gma {

struct SuiteOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int samples = 200;
};

/// Every check on one net. A check that throws becomes an error entry;
/// nothing is dropped. Deterministic for fixed options.
Report run_suite(const ToyNet& net, const SuiteOptions& opt);

/// Central decomposition, blockwise modular and cone checks, symmetries.
Report run_decomposition(const ToyNet& net, const SuiteOptions& opt);

} // namespace gma
