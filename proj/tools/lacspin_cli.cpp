// Command-line front end; all functionality goes through the C API.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "lacspin.h"

int main(int argc, char** argv) {
  CLI::App app{"lac-spin-sim: lock-in-detected LAC spectra of a modulated "
               "electron-nuclear spin pair"};
  app.set_version_flag("--version", std::string("lac-spin-sim v") + lac_version());

  std::string config_path;
  std::string output_path;
  int threads = 0;
  bool verbose = false;
  app.add_option("--config", config_path, "run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--threads", threads, "worker threads (0 = auto)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output", output_path, "override the configured CSV path");
  app.add_flag("--verbose", verbose, "diagnostic output on stderr");

  CLI11_PARSE(app, argc, argv);

  lac_config* config = nullptr;
  lac_status status = lac_config_parse_file(config_path.c_str(), &config);
  if (status != LAC_OK) {
    std::fprintf(stderr, "lacspin: %s\n", lac_last_error());
    return static_cast<int>(status);
  }
  if (!output_path.empty()) {
    status = lac_config_set_output(config, output_path.c_str());
    if (status != LAC_OK) {
      std::fprintf(stderr, "lacspin: %s\n", lac_last_error());
      lac_config_free(config);
      return static_cast<int>(status);
    }
  }

  if (verbose)
    std::fprintf(stderr, "lacspin: running %s with %d thread(s)\n",
                 config_path.c_str(), threads);

  lac_result* result = nullptr;
  status = lac_run(config, threads, verbose ? 1 : 0, &result);
  if (status != LAC_OK) {
    std::fprintf(stderr, "lacspin: %s\n", lac_last_error());
    lac_config_free(config);
    return static_cast<int>(status);
  }

  for (int i = 0; i < lac_result_summary_count(result); ++i)
    std::printf("%s\n", lac_result_summary_line(result, i));

  lac_result_free(result);
  lac_config_free(config);
  return 0;
}
