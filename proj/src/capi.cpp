#include "lacspin.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "lacspin/config.hpp"
#include "lacspin/errors.hpp"
#include "lacspin/runner.hpp"
#include "lacspin/version.hpp"

struct lac_config {
  lacspin::RunConfig cfg;
};

struct lac_result {
  lacspin::RunReport report;
};

namespace {

thread_local std::string g_last_error;

lac_status set_error(lacspin::Status status, const std::string& message) {
  g_last_error = message;
  return static_cast<lac_status>(status);
}

lac_status guard(const std::function<void()>& body) {
  try {
    body();
    return LAC_OK;
  } catch (const lacspin::Error& e) {
    return set_error(e.status(), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(lacspin::Status::internal_error, "out of memory");
  } catch (const std::exception& e) {
    return set_error(lacspin::Status::internal_error, e.what());
  } catch (...) {
    return set_error(lacspin::Status::internal_error, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* lac_version(void) { return LACSPIN_VERSION_STRING; }

const char* lac_last_error(void) { return g_last_error.c_str(); }

lac_status lac_config_parse_string(const char* text, lac_config** out) {
  if (!text || !out)
    return set_error(lacspin::Status::invalid_argument, "null argument");
  *out = nullptr;
  return guard([&] {
    auto handle = std::make_unique<lac_config>();
    handle->cfg = lacspin::parse_config(text);
    *out = handle.release();
  });
}

lac_status lac_config_parse_file(const char* path, lac_config** out) {
  if (!path || !out)
    return set_error(lacspin::Status::invalid_argument, "null argument");
  *out = nullptr;
  return guard([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lacspin::IoError(std::string("cannot read '") + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    auto handle = std::make_unique<lac_config>();
    handle->cfg = lacspin::parse_config(text.str());
    *out = handle.release();
  });
}

void lac_config_free(lac_config* config) { delete config; }

lac_status lac_config_set_output(lac_config* config, const char* path) {
  if (!config || !path || !*path)
    return set_error(lacspin::Status::invalid_argument,
                     "null config or empty path");
  config->cfg.output_path = path;
  return LAC_OK;
}

lac_status lac_run(const lac_config* config, int threads, int verbose,
                   lac_result** out) {
  if (!config || !out)
    return set_error(lacspin::Status::invalid_argument, "null argument");
  *out = nullptr;
  return guard([&] {
    lacspin::RunOptions options;
    options.threads = threads;
    options.verbose = verbose != 0;
    auto handle = std::make_unique<lac_result>();
    handle->report = lacspin::run(config->cfg, options);
    *out = handle.release();
  });
}

void lac_result_free(lac_result* result) { delete result; }

int lac_result_summary_count(const lac_result* result) {
  return result ? static_cast<int>(result->report.summary.size()) : 0;
}

const char* lac_result_summary_line(const lac_result* result, int index) {
  if (!result || index < 0 ||
      index >= static_cast<int>(result->report.summary.size()))
    return nullptr;
  return result->report.summary[static_cast<size_t>(index)].c_str();
}

int lac_result_rows(const lac_result* result) {
  return result ? static_cast<int>(result->report.rows.size()) : 0;
}

int lac_result_cols(const lac_result* result) {
  return result ? static_cast<int>(result->report.column_names.size()) : 0;
}

const char* lac_result_col_name(const lac_result* result, int col) {
  if (!result || col < 0 ||
      col >= static_cast<int>(result->report.column_names.size()))
    return nullptr;
  return result->report.column_names[static_cast<size_t>(col)].c_str();
}

double lac_result_cell(const lac_result* result, int row, int col) {
  if (!result || row < 0 || col < 0 ||
      row >= static_cast<int>(result->report.rows.size()))
    return 0.0;
  const auto& r = result->report.rows[static_cast<size_t>(row)];
  if (col >= static_cast<int>(r.size())) return 0.0;
  return r[static_cast<size_t>(col)];
}

const char* lac_result_csv_path(const lac_result* result) {
  return result ? result->report.csv_path.c_str() : nullptr;
}

}  // extern "C"
