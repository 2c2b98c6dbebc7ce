#ifndef LACSPIN_RUNNER_HPP
#define LACSPIN_RUNNER_HPP

#include <string>
#include <vector>

#include "lacspin/config.hpp"
#include "lacspin/sweep.hpp"

namespace lacspin {

struct RunOptions {
  int threads = 0;  // 0 = hardware concurrency
  bool verbose = false;
  std::string output_override;  // replaces config.output_path when nonempty
};

// Outcome of a completed run: the data table that was written as CSV plus
// human-readable summary lines for standard output.
struct RunReport {
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> summary;
  std::string csv_path;
  std::string plot_path;  // empty unless emit_plot_data was set
};

// Executes the configured mode, writes the CSV (and optional plot data)
// and returns the report. Throws lacspin::Error subclasses on failure.
RunReport run(const RunConfig& config, const RunOptions& options);

// Deterministic number formatting used for all data files: shortest-form
// general notation with 12 significant digits.
std::string format_number(double v);

// Renders the report's table as CSV text (header line, column line, rows).
std::string render_csv(const RunReport& report);

}  // namespace lacspin

#endif
