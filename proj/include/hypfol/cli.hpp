#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hypfol::cli {

enum class Status { pass, fail, skip };

struct CheckRecord {
  std::string name;
  Status status = Status::pass;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

struct SuiteResult {
  std::vector<CheckRecord> checks;  // sorted by name
  bool passed() const;
};

/// Suites: all, hyp, bloch, curvature, converge.
SuiteResult run_suite(const std::string& suite, std::uint64_t seed);
std::string render_suite(const SuiteResult& result, const std::string& suite, std::uint64_t seed);

/// Entry point. Exit codes: 0 pass, 1 check failure or non-convergence,
/// 2 configuration error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hypfol::cli
