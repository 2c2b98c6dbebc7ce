#ifndef LACSPIN_PROPAGATOR_HPP
#define LACSPIN_PROPAGATOR_HPP

#include <functional>
#include <vector>

#include "lacspin/model.hpp"

namespace lacspin {

// exp(m) by scaling-and-squaring with a diagonal Pade approximant.
// Accepts dimensions up to 16; non-finite input raises InvalidArgumentError.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& m);
Mat16 matrix_exp(const Mat16& m);

// exp(L(t)*dt) with the generator frozen at the interval's left endpoint.
SuperOperator step_propagator(const ModelParams& params, double t, double dt);

// Ordered product of the N step propagators over one modulation period;
// the t=0 factor is applied first (rightmost).
SuperOperator period_propagator(const ModelParams& params);

// Periodic steady state of a one-period propagator: solves (U - 1) v = 0
// with the row of the last diagonal element replaced by the trace
// constraint sum_i rho_ii = 1. Falls back to an eigenvector solve for the
// eigenvalue closest to 1 when the replaced system is ill-conditioned.
// Degenerate fixed-point subspaces raise SteadyStateError.
DensityMatrix steady_state(const SuperOperator& u);

// One period of evolution sampled on the propagation grid.
struct PeriodPropagation {
  SuperOperator monodromy;                // the one-period propagator
  std::vector<DensityMatrix> trajectory;  // n_steps + 1 samples rho(t_k)
  ModelParams params_used;
};

// Applies the N step propagators to rho0 and records all N+1 samples; the
// step propagators are identical to the ones period_propagator multiplies.
PeriodPropagation propagate_period(const DensityMatrix& rho0,
                                   const ModelParams& params);

// Monitored (X, Y) pair for the N-convergence controller.
using ObservableExtractor =
    std::function<std::array<double, 2>(const ModelParams&)>;

inline constexpr long kConvergeStepCap = 4000000;

// Doubles n_steps until the extracted pair changes by less than 1% in
// magnitude between consecutive doublings; returns params carrying the
// first N whose doubling changed the pair by less than the threshold.
ModelParams converge_n(const ModelParams& params,
                       const ObservableExtractor& extractor);

// Initial N for auto-converged runs: the period resolved at the fixed step
// width 1e-3 (the operating resolution of the reference calculation),
// rounded up to a power of two.
long auto_initial_steps(double fm);

}  // namespace lacspin

#endif
