#ifndef LACSPIN_SWEEP_HPP
#define LACSPIN_SWEEP_HPP

#include <optional>
#include <span>
#include <vector>

#include "lacspin/lockin.hpp"

namespace lacspin {

enum class CoordinateKind { omega0, fm };

// Ordered lock-in samples of one observable along one swept coordinate.
struct Spectrum {
  struct Point {
    double coordinate = 0.0;
    Quadratures q;
  };

  CoordinateKind coordinate_kind = CoordinateKind::omega0;
  std::vector<Point> points;
  ModelParams params_base;
  Observable observable = Observable::electron_alpha_population;
  std::optional<double> phase_applied;

  void validate() const;  // coordinates strictly increasing, tags uniform
};

// Physicality bookkeeping accumulated over every trajectory sample of a
// sweep. min_eigenvalue_floor holds the positivity floor every sample was
// certified against; worst_eigenvalue is only populated when a sample
// failed the cheap certificate and was diagonalized exactly.
struct SweepAudit {
  double max_trace_deviation = 0.0;
  double max_hermiticity_deviation = 0.0;
  double certified_eigenvalue_floor = -1e-8;
  bool floor_satisfied = true;
  double worst_eigenvalue = 0.0;  // meaningful only when !floor_satisfied
  long samples_audited = 0;

  void merge(const SweepAudit& other);
};

// Quadratures of every requested observable at a single field point, with
// the point's trajectory audit.
struct PointResult {
  double coordinate = 0.0;
  std::vector<Quadratures> q;  // one entry per requested observable
  SweepAudit audit;
};

// Evaluates one sweep point: builds the one-period propagator, solves the
// steady state, re-propagates one period and accumulates the trapezoidal
// quadratures of all requested observables.
PointResult evaluate_point(const ModelParams& params,
                           std::span<const Observable> observables);

// Field sweep at fixed parameters; N is taken from base. Threads > 1 splits
// the grid across workers; results are assembled by index so the output is
// identical at any thread count.
Spectrum sweep_field(const ModelParams& base, std::span<const double> omega0_grid,
                     Observable observable, int threads = 1);

// Same propagation shared across several observables.
std::vector<Spectrum> sweep_field_multi(const ModelParams& base,
                                        std::span<const double> omega0_grid,
                                        std::span<const Observable> observables,
                                        int threads, SweepAudit* audit = nullptr);

// max X' - min X' over the spectrum at the given lock-in phase.
double peak_to_peak(const Spectrum& spectrum, double phase);

// Field window used for modulation-frequency scans: +-10*max(V, A, omega1)
// around omega0 = 0 with 201 points; a second tier adds 3x density within
// +-2*max(V, A) of the extremum detected on the first pass.
std::vector<double> policy_window(const ModelParams& base);
std::vector<double> refinement_window(const ModelParams& base, double center);

// One point of the LAC-line intensity curve.
struct IntensityPoint {
  double fm = 0.0;
  double intensity = 0.0;   // peak-to-peak of best-phase X'
  double phi_star = 0.0;    // radians in [0, pi)
  long converged_n = 0;
};

struct IntensityCurve {
  std::vector<IntensityPoint> points;
  Observable observable = Observable::electron_alpha_population;
  ModelParams params_base;
};

// Full per-frequency record kept by the detailed scan.
struct FrequencyScanEntry {
  double fm = 0.0;
  long converged_n = 0;
  std::vector<Spectrum> spectra;        // one per requested observable
  std::vector<IntensityPoint> intensities;  // parallel to spectra
  SweepAudit audit;
};

// Modulation-frequency sweep: per fm runs the N-convergence controller at
// the probe point, sweeps the policy window (with refinement) and reduces
// each observable's spectrum to its best-phase peak-to-peak intensity.
IntensityCurve sweep_modulation(const ModelParams& base,
                                std::span<const double> fm_grid,
                                Observable observable, int threads = 1);

std::vector<FrequencyScanEntry> sweep_modulation_detailed(
    const ModelParams& base, std::span<const double> fm_grid,
    std::span<const Observable> observables, int threads);

// Probe coordinate for converge_n: the coarse window point with the largest
// quadrature magnitude (ties resolved toward the smaller coordinate).
double convergence_probe(const ModelParams& base,
                         std::span<const double> window, int threads);

// Resolves auto n_steps (base.n_steps <= 0) and runs the doubling protocol
// at the probe point; returns base with the converged N.
ModelParams converge_for_window(const ModelParams& base,
                                std::span<const double> window, int threads);

}  // namespace lacspin

#endif
