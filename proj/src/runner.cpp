#include "lacspin/runner.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "lacspin/version.hpp"

namespace lacspin {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string plot_data(const RunReport& report) {
  // Two-column-per-trace layout: first column against each further column,
  // traces separated by blank lines.
  std::ostringstream out;
  for (size_t col = 1; col < report.column_names.size(); ++col) {
    if (col > 1) out << "\n";
    out << "# trace: " << report.column_names[col] << " vs "
        << report.column_names[0] << "\n";
    for (const auto& row : report.rows)
      out << format_number(row[0]) << " " << format_number(row[col]) << "\n";
  }
  return out.str();
}

double applied_phase(const RunConfig& config, const Spectrum& spectrum) {
  switch (config.phase_policy) {
    case PhasePolicy::raw_xy:
      return 0.0;
    case PhasePolicy::fixed:
      return *config.phase_deg / kRadToDeg;
    case PhasePolicy::best_phase:
      return best_phase(spectrum);
  }
  return 0.0;
}

void run_spectrum(const RunConfig& config, int threads, RunReport& report) {
  ModelParams base = config.base_params(0.0, *config.fm);
  std::vector<double> grid;
  grid.reserve(config.grid.size());
  for (double g : config.grid) grid.push_back(config.to_angular(g));

  if (base.n_steps <= 0) {
    base = converge_for_window(base, grid, threads);
    report.summary.push_back("converged N: " + std::to_string(base.n_steps));
  } else {
    report.summary.push_back("fixed N: " + std::to_string(base.n_steps));
  }

  SweepAudit audit;
  const std::vector<Spectrum> spectra =
      sweep_field_multi(base, grid, config.observables, threads, &audit);

  report.column_names.push_back("omega0");
  std::vector<double> phases;
  for (size_t o = 0; o < spectra.size(); ++o) {
    const std::string name(observable_name(config.observables[o]));
    report.column_names.push_back("X_" + name);
    report.column_names.push_back("Y_" + name);
    report.column_names.push_back("Xprime_" + name);
    phases.push_back(applied_phase(config, spectra[o]));
  }
  report.rows.resize(config.grid.size());
  for (size_t i = 0; i < config.grid.size(); ++i) {
    auto& row = report.rows[i];
    row.push_back(config.grid[i]);  // reported in the configured units
    for (size_t o = 0; o < spectra.size(); ++o) {
      const Quadratures& q = spectra[o].points[i].q;
      row.push_back(q.x);
      row.push_back(q.y);
      row.push_back(phase_rotate(q, phases[o]));
    }
  }
  for (size_t o = 0; o < spectra.size(); ++o) {
    std::ostringstream line;
    line << observable_name(config.observables[o]) << ": phase "
         << format_number(phases[o] * kRadToDeg) << " deg, peak-to-peak "
         << format_number(peak_to_peak(spectra[o], phases[o]));
    report.summary.push_back(line.str());
  }
  std::ostringstream au;
  au << "audit: " << audit.samples_audited << " samples, max trace dev "
     << format_number(audit.max_trace_deviation) << ", max herm dev "
     << format_number(audit.max_hermiticity_deviation) << ", eigenvalue floor "
     << (audit.floor_satisfied ? "satisfied" : "VIOLATED");
  report.summary.push_back(au.str());
}

void run_freqsweep(const RunConfig& config, int threads, RunReport& report) {
  ModelParams base = config.base_params(0.0, config.grid.front());
  base.n_steps = config.n_steps.value_or(0);

  const std::vector<FrequencyScanEntry> detail = sweep_modulation_detailed(
      base, config.grid, config.observables, threads);

  report.column_names.push_back("fm");
  for (Observable o : config.observables) {
    const std::string name(observable_name(o));
    report.column_names.push_back("intensity_" + name);
    report.column_names.push_back("phi_star_deg_" + name);
  }
  report.column_names.push_back("converged_N");

  SweepAudit audit;
  for (size_t i = 0; i < detail.size(); ++i) {
    const auto& entry = detail[i];
    std::vector<double> row;
    row.push_back(entry.fm);
    for (const IntensityPoint& ip : entry.intensities) {
      row.push_back(ip.intensity);
      row.push_back(ip.phi_star * kRadToDeg);
    }
    row.push_back(static_cast<double>(entry.converged_n));
    report.rows.push_back(std::move(row));
    audit.merge(entry.audit);

    std::ostringstream line;
    line << "fm " << format_number(entry.fm) << ": N "
         << entry.converged_n;
    for (size_t o = 0; o < entry.intensities.size(); ++o)
      line << ", " << observable_name(config.observables[o]) << " intensity "
           << format_number(entry.intensities[o].intensity);
    report.summary.push_back(line.str());
  }
  std::ostringstream au;
  au << "audit: " << audit.samples_audited << " samples, max trace dev "
     << format_number(audit.max_trace_deviation) << ", max herm dev "
     << format_number(audit.max_hermiticity_deviation) << ", eigenvalue floor "
     << (audit.floor_satisfied ? "satisfied" : "VIOLATED");
  report.summary.push_back(au.str());
}

void run_trajectory(const RunConfig& config, int threads, RunReport& report) {
  ModelParams base = config.base_params(*config.omega0, *config.fm);
  if (base.n_steps <= 0) {
    // Converge at the trajectory's own field point.
    ObservableExtractor extractor = [&](const ModelParams& p) {
      const Observable obs[1] = {Observable::electron_alpha_population};
      const PointResult r = evaluate_point(p, obs);
      return std::array<double, 2>{r.q[0].x, r.q[0].y};
    };
    ModelParams init = base;
    init.n_steps = auto_initial_steps(base.fm);
    base = converge_n(init, extractor);
    report.summary.push_back("converged N: " + std::to_string(base.n_steps));
  } else {
    report.summary.push_back("fixed N: " + std::to_string(base.n_steps));
  }

  const SuperOperator u = period_propagator(base);
  const DensityMatrix rho0 = steady_state(u);
  const PeriodPropagation traj = propagate_period(rho0, base);

  report.column_names.push_back("t");
  std::vector<std::vector<double>> series;
  for (Observable o : config.observables) {
    report.column_names.push_back(std::string(observable_name(o)));
    series.push_back(observable_series(traj, o));
  }
  const double dt = base.period() / static_cast<double>(base.n_steps);
  report.rows.resize(traj.trajectory.size());
  for (size_t k = 0; k < traj.trajectory.size(); ++k) {
    auto& row = report.rows[k];
    row.push_back(static_cast<double>(k) * dt);
    for (const auto& s : series) row.push_back(s[k]);
  }
  std::ostringstream line;
  line << "trajectory: " << traj.trajectory.size() << " samples over one period T = "
       << format_number(base.period());
  report.summary.push_back(line.str());
  (void)threads;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  if (ec != std::errc{}) throw Error(Status::internal_error, "number formatting failed");
  return std::string(buf, ptr);
}

std::string render_csv(const RunReport& report) {
  std::ostringstream out;
  out << "# lac-spin-sim v" << kVersion << "\n";
  for (size_t c = 0; c < report.column_names.size(); ++c) {
    if (c) out << ",";
    out << report.column_names[c];
  }
  out << "\n";
  for (const auto& row : report.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << format_number(row[c]);
    }
    out << "\n";
  }
  return out.str();
}

RunReport run(const RunConfig& config, const RunOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.summary.push_back(std::string("mode: ") +
                           std::string(run_mode_name(config.mode)));
  report.summary.push_back(std::string("units: ") +
                           std::string(unit_system_name(config.units)));

  switch (config.mode) {
    case RunMode::spectrum:
      run_spectrum(config, options.threads, report);
      break;
    case RunMode::freqsweep:
      run_freqsweep(config, options.threads, report);
      break;
    case RunMode::trajectory:
      run_trajectory(config, options.threads, report);
      break;
  }

  report.csv_path = options.output_override.empty() ? config.output_path
                                                    : options.output_override;
  write_file(report.csv_path, render_csv(report));
  if (config.emit_plot_data) {
    report.plot_path = report.csv_path + ".plot.dat";
    write_file(report.plot_path, plot_data(report));
  }

  const auto t1 = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  std::ostringstream wall;
  wall << "wall time: " << format_number(secs) << " s";
  report.summary.push_back(wall.str());
  report.summary.push_back("output: " + report.csv_path);
  return report;
}

}  // namespace lacspin
