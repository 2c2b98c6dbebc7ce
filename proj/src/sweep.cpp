#include "lacspin/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

namespace lacspin {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) across workers; exceptions are rethrown
// on the calling thread. Output ordering is the caller's responsibility
// (results indexed by i), so the schedule never affects the result.
void parallel_for_index(size_t count, int threads,
                        const std::function<void(size_t)>& fn) {
  const int nworkers = std::min<size_t>(resolve_threads(threads), count);
  if (nworkers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nworkers));
  for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double drive_cos(long k, long n) {
  return std::cos(2.0 * std::numbers::pi *
                  (static_cast<double>(k) / static_cast<double>(n)));
}

// Cheap positivity certificate: rho + (floor + slack) * 1 admits a Cholesky
// factorization iff min eig >= -(floor + slack).
bool certify_floor(const Mat4& hermitized, double floor) {
  Mat4 shifted = hermitized + (floor + 1e-12) * Mat4::Identity();
  Eigen::LLT<Mat4> llt(shifted);
  return llt.info() == Eigen::Success;
}

void audit_sample(const Vec16& v, SweepAudit& audit) {
  const DensityMatrix rho = DensityMatrix::from_vec(v);
  audit.max_trace_deviation =
      std::max(audit.max_trace_deviation, rho.trace_deviation());
  audit.max_hermiticity_deviation =
      std::max(audit.max_hermiticity_deviation, rho.hermiticity_deviation());
  const Mat4 sym = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  if (!certify_floor(sym, -audit.certified_eigenvalue_floor)) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(sym, Eigen::EigenvaluesOnly);
    const double mineig = es.eigenvalues().minCoeff();
    if (mineig < audit.certified_eigenvalue_floor) {
      if (audit.floor_satisfied) {
        audit.floor_satisfied = false;
        audit.worst_eigenvalue = mineig;
      } else {
        audit.worst_eigenvalue = std::min(audit.worst_eigenvalue, mineig);
      }
    }
  }
  ++audit.samples_audited;
}

}  // namespace

void SweepAudit::merge(const SweepAudit& other) {
  max_trace_deviation = std::max(max_trace_deviation, other.max_trace_deviation);
  max_hermiticity_deviation =
      std::max(max_hermiticity_deviation, other.max_hermiticity_deviation);
  if (!other.floor_satisfied) {
    if (floor_satisfied) {
      floor_satisfied = false;
      worst_eigenvalue = other.worst_eigenvalue;
    } else {
      worst_eigenvalue = std::min(worst_eigenvalue, other.worst_eigenvalue);
    }
  }
  samples_audited += other.samples_audited;
}

void Spectrum::validate() const {
  for (size_t i = 1; i < points.size(); ++i)
    if (!(points[i].coordinate > points[i - 1].coordinate))
      throw InvalidArgumentError("spectrum coordinates must be strictly increasing");
  for (const auto& p : points)
    if (p.q.observable != observable)
      throw InvalidArgumentError("spectrum points carry mixed observable tags");
}

PointResult evaluate_point(const ModelParams& params,
                           std::span<const Observable> observables) {
  params.validate();
  if (observables.empty())
    throw InvalidArgumentError("evaluate_point: no observables requested");

  const LiouvillianFamily family(params);
  const long n = params.n_steps;
  const double dt = params.period() / static_cast<double>(n);

  // Pass 1: one-period propagator.
  Mat16 u = Mat16::Identity();
  for (long k = 0; k < n; ++k) {
    const Mat16 e = Mat16(family.at_drive(drive_cos(k, n)) * dt).exp();
    u = e * u;
  }
  SuperOperator monodromy;
  monodromy.kind = SuperOperator::Kind::propagator;
  monodromy.m = u;
  DensityMatrix rho0 = steady_state(monodromy);

  // Pass 2: re-propagate the steady state through the same step
  // propagators, auditing every sample and accumulating the trapezoidal
  // quadratures of every requested observable.
  PointResult out;
  out.coordinate = params.omega0;
  out.q.resize(observables.size());
  std::vector<double> xs(observables.size(), 0.0), ys(observables.size(), 0.0);

  Vec16 v = rho0.vec();
  for (long k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    const double phase = 2.0 * std::numbers::pi *
                         (static_cast<double>(k) / static_cast<double>(n));
    const double cw = std::cos(phase), sw = std::sin(phase);
    audit_sample(v, out.audit);
    for (size_t o = 0; o < observables.size(); ++o) {
      const double val = observable_value(v, observables[o]);
      xs[o] += w * val * cw;
      ys[o] += w * val * sw;
    }
    if (k < n) {
      const Mat16 e = Mat16(family.at_drive(drive_cos(k, n)) * dt).exp();
      v = e * v;
    }
  }
  for (size_t o = 0; o < observables.size(); ++o) {
    out.q[o].x = xs[o] / static_cast<double>(n);
    out.q[o].y = ys[o] / static_cast<double>(n);
    out.q[o].observable = observables[o];
  }
  return out;
}

std::vector<Spectrum> sweep_field_multi(const ModelParams& base,
                                        std::span<const double> omega0_grid,
                                        std::span<const Observable> observables,
                                        int threads, SweepAudit* audit) {
  if (omega0_grid.empty())
    throw InvalidArgumentError("sweep_field: empty omega0 grid");
  for (size_t i = 1; i < omega0_grid.size(); ++i)
    if (!(omega0_grid[i] > omega0_grid[i - 1]))
      throw InvalidArgumentError("sweep_field: omega0 grid must be strictly increasing");

  std::vector<PointResult> results(omega0_grid.size());
  parallel_for_index(omega0_grid.size(), threads, [&](size_t i) {
    ModelParams p = base;
    p.omega0 = omega0_grid[i];
    try {
      results[i] = evaluate_point(p, observables);
    } catch (const SteadyStateError& e) {
      throw SteadyStateError("at omega0 = " + std::to_string(omega0_grid[i]) +
                             ": " + e.what());
    }
  });

  std::vector<Spectrum> out(observables.size());
  for (size_t o = 0; o < observables.size(); ++o) {
    out[o].coordinate_kind = CoordinateKind::omega0;
    out[o].params_base = base;
    out[o].observable = observables[o];
    out[o].points.reserve(omega0_grid.size());
    for (size_t i = 0; i < omega0_grid.size(); ++i)
      out[o].points.push_back({omega0_grid[i], results[i].q[o]});
  }
  if (audit) {
    for (const auto& r : results) audit->merge(r.audit);
  }
  return out;
}

Spectrum sweep_field(const ModelParams& base, std::span<const double> omega0_grid,
                     Observable observable, int threads) {
  const Observable obs[1] = {observable};
  return sweep_field_multi(base, omega0_grid, obs, threads).front();
}

double peak_to_peak(const Spectrum& spectrum, double phase) {
  if (spectrum.points.size() < 2)
    throw InvalidArgumentError("peak_to_peak: need at least 2 points");
  double lo = 1e300, hi = -1e300;
  for (const auto& p : spectrum.points) {
    const double v = phase_rotate(p.q, phase);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

std::vector<double> policy_window(const ModelParams& base) {
  const double half =
      10.0 * std::max({base.v_perturb, base.hfc, base.omega1});
  if (!(half > 0.0))
    throw InvalidArgumentError("policy_window: V, A and omega1 are all zero");
  const int count = 201;
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = -half + 2.0 * half * (static_cast<double>(i) / (count - 1));
  return grid;
}

std::vector<double> refinement_window(const ModelParams& base, double center) {
  const double half = 10.0 * std::max({base.v_perturb, base.hfc, base.omega1});
  const double span = 2.0 * std::max(base.v_perturb, base.hfc);
  const double base_step = 2.0 * half / 200.0;
  const double step = base_step / 3.0;
  std::vector<double> extra;
  // Insert the two missing thirds between base-grid nodes; nodes that fall
  // on the base grid are skipped exactly by the k % 3 test.
  const long k_lo = static_cast<long>(std::ceil((center - span + half) / step)) - 1;
  const long k_hi = static_cast<long>(std::floor((center + span + half) / step)) + 1;
  for (long k = std::max<long>(k_lo, 0); k <= k_hi; ++k) {
    if (k % 3 == 0) continue;  // coincides with the base grid
    const double x = -half + static_cast<double>(k) * step;
    if (x < -half || x > half) continue;
    if (x < center - span || x > center + span) continue;
    extra.push_back(x);
  }
  return extra;
}

double convergence_probe(const ModelParams& base,
                         std::span<const double> window, int threads) {
  if (window.empty())
    throw InvalidArgumentError("convergence_probe: empty window");
  // Coarse pre-pass: 9 evenly spaced window points at the initial N.
  std::vector<double> coarse;
  const int m = 9;
  for (int i = 0; i < m; ++i) {
    const size_t idx = (window.size() - 1) * static_cast<size_t>(i) / (m - 1);
    if (coarse.empty() || window[idx] > coarse.back())
      coarse.push_back(window[idx]);
  }
  const Observable obs[1] = {Observable::electron_alpha_population};
  std::vector<PointResult> results(coarse.size());
  parallel_for_index(coarse.size(), threads, [&](size_t i) {
    ModelParams p = base;
    p.omega0 = coarse[i];
    results[i] = evaluate_point(p, obs);
  });
  // Ascending scan, strict improvement: ties resolve to the smaller
  // coordinate automatically.
  size_t best = 0;
  double best_mag = -1.0;
  for (size_t i = 0; i < coarse.size(); ++i) {
    const double mag = results[i].q[0].magnitude();
    if (mag > best_mag) {
      best = i;
      best_mag = mag;
    }
  }
  return coarse[best];
}

ModelParams converge_for_window(const ModelParams& base,
                                std::span<const double> window, int threads) {
  ModelParams params = base;
  if (params.n_steps <= 0) params.n_steps = auto_initial_steps(params.fm);
  params.validate();
  const double probe = convergence_probe(params, window, threads);
  const Observable obs[1] = {Observable::electron_alpha_population};
  ObservableExtractor extractor = [&](const ModelParams& p) {
    ModelParams q = p;
    q.omega0 = probe;
    const PointResult r = evaluate_point(q, obs);
    return std::array<double, 2>{r.q[0].x, r.q[0].y};
  };
  return converge_n(params, extractor);
}

namespace {

std::vector<double> merged_policy_grid(const ModelParams& converged,
                                       std::span<const Observable> observables,
                                       int threads, std::vector<Spectrum>& spectra,
                                       SweepAudit& audit) {
  std::vector<double> grid = policy_window(converged);
  spectra = sweep_field_multi(converged, grid, observables, threads, &audit);

  // Locate the extremum of the first observable's best-phase signal and
  // densify around it.
  const Spectrum& lead = spectra.front();
  const double phi = best_phase(lead);
  double extremum = lead.points.front().coordinate;
  double best = -1.0;
  for (const auto& p : lead.points) {
    const double v = std::abs(phase_rotate(p.q, phi));
    if (v > best) {
      best = v;
      extremum = p.coordinate;
    }
  }
  std::vector<double> extra = refinement_window(converged, extremum);
  if (extra.empty()) return grid;

  SweepAudit extra_audit;
  std::vector<Spectrum> fine =
      sweep_field_multi(converged, extra, observables, threads, &extra_audit);
  audit.merge(extra_audit);

  // Merge the refined points into each spectrum, keeping coordinates
  // strictly increasing.
  std::vector<double> merged;
  merged.reserve(grid.size() + extra.size());
  for (size_t o = 0; o < spectra.size(); ++o) {
    std::vector<Spectrum::Point> pts;
    pts.reserve(spectra[o].points.size() + fine[o].points.size());
    std::merge(spectra[o].points.begin(), spectra[o].points.end(),
               fine[o].points.begin(), fine[o].points.end(),
               std::back_inserter(pts),
               [](const Spectrum::Point& a, const Spectrum::Point& b) {
                 return a.coordinate < b.coordinate;
               });
    spectra[o].points = std::move(pts);
    spectra[o].validate();
  }
  std::merge(grid.begin(), grid.end(), extra.begin(), extra.end(),
             std::back_inserter(merged));
  return merged;
}

}  // namespace

std::vector<FrequencyScanEntry> sweep_modulation_detailed(
    const ModelParams& base, std::span<const double> fm_grid,
    std::span<const Observable> observables, int threads) {
  if (fm_grid.empty())
    throw InvalidArgumentError("sweep_modulation: empty fm grid");
  for (size_t i = 1; i < fm_grid.size(); ++i)
    if (!(fm_grid[i] > fm_grid[i - 1]))
      throw InvalidArgumentError("sweep_modulation: fm grid must be strictly increasing");
  for (double fm : fm_grid)
    if (!(fm > 0.0))
      throw InvalidArgumentError("sweep_modulation: fm values must be > 0");

  std::vector<FrequencyScanEntry> out;
  out.reserve(fm_grid.size());
  for (double fm : fm_grid) {
    ModelParams p = base;
    p.fm = fm;
    p.n_steps = base.n_steps;
    const std::vector<double> window = policy_window(p);
    const ModelParams converged = converge_for_window(p, window, threads);

    FrequencyScanEntry entry;
    entry.fm = fm;
    entry.converged_n = converged.n_steps;
    merged_policy_grid(converged, observables, threads, entry.spectra,
                       entry.audit);
    entry.intensities.reserve(entry.spectra.size());
    for (const Spectrum& s : entry.spectra) {
      IntensityPoint ip;
      ip.fm = fm;
      ip.converged_n = converged.n_steps;
      ip.phi_star = best_phase(s);
      ip.intensity = peak_to_peak(s, ip.phi_star);
      entry.intensities.push_back(ip);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

IntensityCurve sweep_modulation(const ModelParams& base,
                                std::span<const double> fm_grid,
                                Observable observable, int threads) {
  const Observable obs[1] = {observable};
  const std::vector<FrequencyScanEntry> detail =
      sweep_modulation_detailed(base, fm_grid, obs, threads);
  IntensityCurve curve;
  curve.observable = observable;
  curve.params_base = base;
  curve.points.reserve(detail.size());
  for (const auto& entry : detail) curve.points.push_back(entry.intensities.front());
  return curve;
}

}  // namespace lacspin
