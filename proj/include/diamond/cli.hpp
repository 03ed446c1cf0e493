#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace diamond {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs a named invariant suite ("formulas", "heights", "montecarlo",
/// "asymptotics"). Throws BadSpec for an unknown name.
std::vector<CheckResult> run_suite(std::string_view name);

/// Entry point of the `diamond` command line tool. args[0] is the program
/// name. JSON goes to `out`, diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diamond
