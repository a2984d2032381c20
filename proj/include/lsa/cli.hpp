#pragma once

// The command-line surface: classify, dio, roots, refine and plot.

#include <iosfwd>
#include <string>
#include <vector>

#include "lsa/real.hpp"

namespace lsa {

enum ExitCode { kExitSuccess = 0, kExitNumericFailure = 1, kExitInputError = 2 };

/// Runs one command line (args[0] is the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Number formatting used in CSV output: 20 significant digits.
std::string csv_number(const Real& x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws ValidationError when absent.
  std::size_t column(const std::string& name) const;
};

/// Comma-separated values with a header row.
CsvTable parse_csv(const std::string& text);

}  // namespace lsa
