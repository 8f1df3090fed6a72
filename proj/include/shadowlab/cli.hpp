#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shadowlab::cli {

/// Exit-code contract.
enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

struct Outcome {
  int exit_code = kOk;
  /// Report JSON text (empty on usage errors).
  std::string report;
  /// Diagnostics meant for stderr.
  std::string diagnostics;
  /// Set when --out received the report (every command except construct).
  std::string report_file;
};

/// Runs one command line (without the program name). Files named by --out
/// or --csv are written; nothing is printed. construct writes its graph to
/// --out; the other commands write their report there.
Outcome run(const std::vector<std::string>& args);

/// Process entry: prints the report to stdout (or --out), diagnostics to
/// stderr, and returns the exit code.
int main(int argc, char** argv);

}  // namespace shadowlab::cli
