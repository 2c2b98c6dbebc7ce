#include "lacspin/propagator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace lacspin {

namespace {

bool finite(const Eigen::MatrixXcd& m) {
  return m.allFinite();
}

// Phase grid of the period split into N steps; index-based so that the
// drive samples are exactly periodic across the whole period.
double drive_cos(long k, long n) {
  return std::cos(2.0 * std::numbers::pi *
                  (static_cast<double>(k) / static_cast<double>(n)));
}

Vec16 trace_functional() {
  Vec16 tau = Vec16::Zero();
  for (int i = 0; i < kDim; ++i) tau(vec_index(i, i)) = 1.0;
  return tau;
}

// Fixed point via the dominant eigenvector; used when the replaced linear
// system is ill-conditioned.
DensityMatrix steady_state_eigen(const Mat16& u) {
  Eigen::ComplexEigenSolver<Mat16> es(u);
  if (es.info() != Eigen::Success)
    throw SteadyStateError("eigenvector fallback failed to converge");
  int best = 0;
  int near_unit = 0;
  double best_dist = 1e300;
  for (int i = 0; i < kDim2; ++i) {
    double d = std::abs(es.eigenvalues()(i) - complexd{1.0, 0.0});
    if (d < 1e-8) ++near_unit;
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (near_unit > 1)
    throw SteadyStateError(
        "degenerate fixed-point subspace: " + std::to_string(near_unit) +
        " eigenvalues within 1e-8 of unity (non-unique steady state)");
  Vec16 v = es.eigenvectors().col(best);
  complexd tr = 0.0;
  for (int i = 0; i < kDim; ++i) tr += v(vec_index(i, i));
  if (std::abs(tr) < 1e-12)
    throw SteadyStateError("fixed-point candidate is traceless (non-unique steady state)");
  v /= tr;
  return DensityMatrix::from_vec(v);
}

}  // namespace

long auto_initial_steps(double fm) {
  if (!(fm > 0.0)) throw InvalidArgumentError("auto_initial_steps: fm must be > 0");
  const double period = 1.0 / fm;
  const double dt0 = 1e-3;
  long n = 2;
  while (static_cast<double>(n) < period / dt0 && n < kConvergeStepCap) n *= 2;
  return n;
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols())
    throw InvalidArgumentError("matrix_exp: matrix must be square");
  if (m.rows() > kDim2)
    throw InvalidArgumentError("matrix_exp: dimension exceeds 16");
  if (!finite(m))
    throw InvalidArgumentError("matrix_exp: non-finite entries");
  return m.exp();
}

Mat16 matrix_exp(const Mat16& m) {
  if (!m.allFinite())
    throw InvalidArgumentError("matrix_exp: non-finite entries");
  return m.exp();
}

SuperOperator step_propagator(const ModelParams& params, double t, double dt) {
  if (!(dt > 0.0)) throw InvalidArgumentError("step_propagator: dt must be > 0");
  LiouvillianFamily family(params);
  SuperOperator out;
  out.kind = SuperOperator::Kind::propagator;
  out.m = matrix_exp(Mat16(family.at_time(t) * dt));
  return out;
}

SuperOperator period_propagator(const ModelParams& params) {
  params.validate();
  LiouvillianFamily family(params);
  const long n = params.n_steps;
  const double dt = params.period() / static_cast<double>(n);
  Mat16 u = Mat16::Identity();
  for (long k = 0; k < n; ++k) {
    Mat16 e = matrix_exp(Mat16(family.at_drive(drive_cos(k, n)) * dt));
    u = e * u;
  }
  SuperOperator out;
  out.kind = SuperOperator::Kind::propagator;
  out.m = u;
  return out;
}

DensityMatrix steady_state(const SuperOperator& u) {
  if (u.kind != SuperOperator::Kind::propagator)
    throw InvalidArgumentError("steady_state: expected a propagator");

  Mat16 a = u.m - Mat16::Identity();
  // Replace the row of the last diagonal element (rho_bb,bb) by the trace
  // constraint sum_i rho_ii = 1.
  const int replaced = vec_index(kDim - 1, kDim - 1);
  a.row(replaced).setZero();
  for (int i = 0; i < kDim; ++i) a(replaced, vec_index(i, i)) = 1.0;
  Vec16 b = Vec16::Zero();
  b(replaced) = 1.0;

  Eigen::PartialPivLU<Mat16> lu(a);
  Vec16 v = lu.solve(b);

  const double norm_a = a.cwiseAbs().colwise().sum().maxCoeff();
  const Mat16 inv = lu.inverse();
  const double norm_inv = inv.cwiseAbs().colwise().sum().maxCoeff();
  const double cond = norm_a * norm_inv;

  double residual = (u.m * v - v).norm();
  if (cond > 1e12 || !v.allFinite() || residual > 1e-10) {
    DensityMatrix rho = steady_state_eigen(u.m);
    residual = (u.m * rho.vec() - rho.vec()).norm();
    if (residual > 1e-10)
      throw SteadyStateError("fixed-point residual " + std::to_string(residual) +
                             " exceeds 1e-10 after eigenvector fallback");
    return rho;
  }
  return DensityMatrix::from_vec(v);
}

PeriodPropagation propagate_period(const DensityMatrix& rho0,
                                   const ModelParams& params) {
  params.validate();
  LiouvillianFamily family(params);
  const long n = params.n_steps;
  const double dt = params.period() / static_cast<double>(n);

  PeriodPropagation out;
  out.params_used = params;
  out.trajectory.reserve(static_cast<size_t>(n) + 1);
  out.monodromy.kind = SuperOperator::Kind::propagator;

  Mat16 u = Mat16::Identity();
  Vec16 v = rho0.vec();
  out.trajectory.push_back(rho0);
  for (long k = 0; k < n; ++k) {
    Mat16 e = matrix_exp(Mat16(family.at_drive(drive_cos(k, n)) * dt));
    v = e * v;
    u = e * u;
    out.trajectory.push_back(DensityMatrix::from_vec(v));
  }
  out.monodromy.m = u;
  return out;
}

ModelParams converge_n(const ModelParams& params,
                       const ObservableExtractor& extractor) {
  params.validate();
  ModelParams current = params;
  std::array<double, 2> q1 = extractor(current);
  while (true) {
    if (2 * current.n_steps > kConvergeStepCap) {
      std::ostringstream msg;
      msg << "N-convergence cap " << kConvergeStepCap
          << " reached at N = " << current.n_steps << " (last pair ["
          << q1[0] << ", " << q1[1] << "])";
      throw ConvergenceError(msg.str(), q1, q1);
    }
    ModelParams doubled = current;
    doubled.n_steps = 2 * current.n_steps;
    std::array<double, 2> q2 = extractor(doubled);
    const double change = std::hypot(q2[0] - q1[0], q2[1] - q1[1]);
    const double scale = std::hypot(q2[0], q2[1]);
    if (change <= std::max(0.01 * scale, 1e-12)) return current;
    current = doubled;
    q1 = q2;
  }
}

}  // namespace lacspin
