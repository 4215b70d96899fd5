#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "progdist_cli/config.hpp"

namespace progdist::cli {

/// Shortest round-trip decimal form, '.' separator, no locale.
std::string format_number(double x);
std::string format_number(u64 x);
std::string format_number(i64 x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row(const std::vector<std::string>& cells);
  [[nodiscard]] std::string str() const;
  [[nodiscard]] std::size_t rows() const { return rows_; }

 private:
  std::string text_;
  std::size_t width_;
  std::size_t rows_ = 0;
};

struct RunResult {
  std::string summary;  // one line, no trailing newline
  CsvTable csv{{}};
  nlohmann::json report;
  bool ok = true;  // false when a check the command performs did not hold
};

/// Runs the configured subcommand on an already resolved config. No I/O.
RunResult run(const ExperimentConfig& resolved);

/// The sidecar document: {"config": ..., "report": ...}. The thread count is
/// left out since it never changes results.
nlohmann::json provenance(const ExperimentConfig& resolved, const RunResult& result);

/// Writes <out>.csv and <out>.json.
void write_artifacts(const ExperimentConfig& resolved, const RunResult& result);

/// Full command-line entry point; returns the process exit status
/// (0 success, 1 module error or failed check, 2 usage or config error).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace progdist::cli
