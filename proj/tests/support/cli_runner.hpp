#pragma once

#include <string>
#include <vector>

namespace ntm::testing {

struct CliOutcome {
  int exit_code = -1;
  std::string out;  // stdout only
};

/// Runs the ntmctx binary built alongside the tests. Arguments are quoted
/// for the shell; stderr is discarded.
CliOutcome run_ntmctx(const std::vector<std::string>& args);

/// Absolute path of a bundled fixture.
std::string fixture_path(const std::string& name);

}  // namespace ntm::testing
