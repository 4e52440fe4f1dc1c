#pragma once

// Verification suites: each check evaluates one displayed identity at its
// pinned tolerance and reports the measured residual.  The same rows back
// the CLI `verify` command and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

namespace gftoda {

struct CheckRow {
  std::string id;
  double residual = 0;
  double threshold = 0;
  bool pass = false;
  std::string note;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRow> rows;
  bool all_pass() const;
  double max_scaled() const;  // max residual / threshold
};

struct VerifyConfig {
  std::uint64_t seed = 7;
};

const std::vector<std::string>& suite_names();

// Runs the selected suites ("all" expands to every suite); unknown names
// throw.  Row order is deterministic for a fixed seed.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& which,
                                    const VerifyConfig& config);

}  // namespace gftoda
