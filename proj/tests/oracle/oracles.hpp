// Independent reference implementations used only by tests. None of these
// call the propagator module: the integrator, the series exponential and
// the closed-form rate models provide a second route to every checked
// quantity.
#ifndef LACSPIN_TEST_ORACLES_HPP
#define LACSPIN_TEST_ORACLES_HPP

#include <string>
#include <vector>

#include "lacspin/model.hpp"
#include "lacspin/sweep.hpp"

namespace lacspin::oracle {

struct OracleReport {
  std::string quantity;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  static OracleReport make(const std::string& quantity, double max_abs_error,
                           double tolerance) {
    return {quantity, max_abs_error, tolerance, max_abs_error <= tolerance};
  }
  std::string line() const;
};

// Classical RK4 integration of d rho/dt = L(t) rho with the generator
// evaluated at the stage times; `substeps` sub-intervals per period.
// Trace drift beyond 1e-6 raises an integrator-failure error.
DensityMatrix rk4_integrate(const ModelParams& params, const DensityMatrix& rho0,
                            long n_periods, long substeps);

// Long-time limit by RK4: integrates the burn-in prescribed by the slowest
// nonzero rate (at least 200 periods), then continues until the per-period
// increment certifies convergence below `limit_tol` or `max_periods` is hit.
DensityMatrix rk4_long_time_limit(const ModelParams& params,
                                  const DensityMatrix& rho0, long substeps,
                                  double limit_tol, long max_periods = 50000);

// Partial Taylor sum sum_{k<=terms} m^k / k! with its remainder bound
// ||m||^{terms+1} / (terms+1)! * e^{||m||}; requires ||m|| <= 1.
struct TaylorExp {
  Eigen::MatrixXcd value;
  double remainder_bound = 0.0;
};
TaylorExp taylor_expm(const Eigen::MatrixXcd& m, int terms);

// Taylor exponential extended to larger norms by oracle-side scaling and
// squaring; the bound is propagated through the squarings.
TaylorExp taylor_expm_scaled(const Eigen::MatrixXcd& m, int terms);

// Closed-form alpha-state population of the two-state rate model
//   dp/dt = -(pump + r1/2) p + (r1/2)(1 - p).
double two_state_rate_model(double r1, double pump, double t, double p_alpha0);
double two_state_stationary(double r1, double pump);

// Exhaustive lock-in phase scan (default 0.1 degree grid), the reference
// for best_phase.
double grid_scan_best_phase(const Spectrum& spectrum, double step_deg = 0.1);

// Natural cubic spline through uniform samples, integrated against
// cos/sin(2 pi t / T) by adaptive Simpson; the reference for the
// trapezoidal quadratures.
std::pair<double, double> spline_quadratures(std::span<const double> series);

}  // namespace lacspin::oracle

#endif
