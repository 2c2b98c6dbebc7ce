#include "lacspin/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace lacspin {

namespace {

constexpr complexd kI{0.0, 1.0};

// Single spin-1/2 operators with the basis ordered (alpha, beta), i.e.
// m = -1/2 first. They satisfy [sx, sy] = i*sz and cyclic permutations.
Mat4 kron4(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

struct HalfSpin {
  Eigen::Matrix2cd x, y, z, id;
  HalfSpin() {
    x << 0.0, 0.5, 0.5, 0.0;
    y << 0.0, 0.5 * kI, -0.5 * kI, 0.0;
    z << -0.5, 0.0, 0.0, 0.5;
    id.setIdentity();
  }
};

bool finite(const Mat4& m) {
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

}  // namespace

std::string_view observable_name(Observable o) {
  switch (o) {
    case Observable::electron_alpha_population: return "electron_alpha_population";
    case Observable::electron_polarization: return "electron_polarization";
    case Observable::nuclear_polarization: return "nuclear_polarization";
  }
  return "unknown";
}

bool parse_observable(std::string_view name, Observable& out) {
  if (name == "electron_alpha_population") {
    out = Observable::electron_alpha_population;
  } else if (name == "electron_polarization") {
    out = Observable::electron_polarization;
  } else if (name == "nuclear_polarization") {
    out = Observable::nuclear_polarization;
  } else {
    return false;
  }
  return true;
}

void ModelParams::validate() const {
  std::ostringstream issues;
  auto check_finite = [&](double v, const char* name) {
    if (!std::isfinite(v)) issues << name << " must be finite; ";
  };
  check_finite(omega0, "omega0");
  check_finite(v_perturb, "v_perturb");
  check_finite(hfc, "hfc");
  check_finite(omega1, "omega1");
  check_finite(fm, "fm");
  check_finite(r1, "r1");
  check_finite(r2, "r2");
  check_finite(pump, "pump");
  if (!(fm > 0.0)) issues << "fm must be > 0; ";
  if (n_steps < 2) issues << "n_steps must be >= 2; ";
  if (r1 < 0.0) issues << "r1 must be >= 0; ";
  if (r2 < 0.0) issues << "r2 must be >= 0; ";
  if (pump < 0.0) issues << "pump must be >= 0; ";
  std::string s = issues.str();
  if (!s.empty()) {
    s.resize(s.size() - 2);
    throw InvalidArgumentError("invalid model parameters: " + s);
  }
}

SpinOperatorSet build_spin_operators() {
  static const HalfSpin h;
  SpinOperatorSet ops;
  ops.sx = kron4(h.x, h.id);
  ops.sy = kron4(h.y, h.id);
  ops.sz = kron4(h.z, h.id);
  ops.ix = kron4(h.id, h.x);
  ops.iy = kron4(h.id, h.y);
  ops.iz = kron4(h.id, h.z);
  return ops;
}

Mat4 SpinOperatorSet::electron_plus() const { return sx + kI * sy; }
Mat4 SpinOperatorSet::electron_minus() const { return sx - kI * sy; }

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Mat4::Identity() * 0.25);
}

DensityMatrix DensityMatrix::from_vec(const Vec16& v) {
  Mat4 m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      m(i, j) = v(vec_index(i, j));
  return DensityMatrix(m);
}

Vec16 DensityMatrix::vec() const {
  Vec16 v;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      v(vec_index(i, j)) = m_(i, j);
  return v;
}

double DensityMatrix::trace_deviation() const {
  return std::abs(m_.trace() - complexd{1.0, 0.0});
}

double DensityMatrix::hermiticity_deviation() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Mat4 sym = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
  std::ostringstream issues;
  if (hermiticity_deviation() > 1e-10)
    issues << "not Hermitian (dev " << hermiticity_deviation() << "); ";
  if (trace_deviation() > 1e-10)
    issues << "trace != 1 (dev " << trace_deviation() << "); ";
  if (min_eigenvalue() < -1e-8)
    issues << "negative eigenvalue " << min_eigenvalue() << "; ";
  std::string s = issues.str();
  if (!s.empty()) {
    s.resize(s.size() - 2);
    throw InvalidArgumentError("density matrix invariant violated: " + s);
  }
}

double SuperOperator::trace_defect() const {
  double worst = 0.0;
  for (int col = 0; col < kDim2; ++col) {
    complexd sum = 0.0;
    for (int i = 0; i < kDim; ++i) sum += m(vec_index(i, i), col);
    if (kind == Kind::propagator) {
      // trace functional applied to the image of a basis matrix unit E_kl
      // must equal its own trace: 1 on diagonal units, 0 otherwise.
      int k = col / kDim, l = col % kDim;
      if (k == l) sum -= 1.0;
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

DensityMatrix SuperOperator::apply(const DensityMatrix& rho) const {
  return DensityMatrix::from_vec(m * rho.vec());
}

Mat4 hamiltonian_at(const ModelParams& params, double t) {
  static const SpinOperatorSet ops = build_spin_operators();
  const double drive = std::cos(2.0 * std::numbers::pi * params.fm * t);
  Mat4 h = params.omega0 * ops.sz + params.v_perturb * ops.sx +
           params.hfc * (ops.sx * ops.ix + ops.sy * ops.iy + ops.sz * ops.iz) +
           params.omega1 * drive * ops.sz;
  return h;
}

SuperOperator coherent_superoperator(const Mat4& h) {
  if (!finite(h)) throw InvalidArgumentError("coherent_superoperator: non-finite Hamiltonian");
  SuperOperator out;
  out.kind = SuperOperator::Kind::generator;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          complexd v = 0.0;
          if (i == k) v += h(l, j);
          if (j == l) v -= h(i, k);
          if (v != 0.0) out.m(vec_index(i, j), vec_index(k, l)) = kI * v;
        }
  return out;
}

Mat16 dissipator(const Mat4& c) {
  const Mat4 cd = c.adjoint();
  const Mat4 cdc = cd * c;
  Mat16 out = Mat16::Zero();
  // Row-major vec map: vec(A rho B) = (A kron B^T) vec(rho), so
  // D[c] = c kron conj(c) - 1/2 (c^dag c kron 1) - 1/2 (1 kron (c^dag c)^T).
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          complexd v = c(i, k) * std::conj(c(j, l));
          if (j == l) v -= 0.5 * cdc(i, k);
          if (i == k) v -= 0.5 * cdc(l, j);
          if (v != 0.0) out(vec_index(i, j), vec_index(k, l)) = v;
        }
  return out;
}

SuperOperator relaxation_superoperator(const ModelParams& params) {
  params.validate();
  static const SpinOperatorSet ops = build_spin_operators();
  SuperOperator out;
  out.kind = SuperOperator::Kind::generator;
  out.m = Mat16::Zero();
  if (params.r1 > 0.0) {
    out.m += (0.5 * params.r1) * dissipator(ops.electron_plus());
    out.m += (0.5 * params.r1) * dissipator(ops.electron_minus());
  }
  if (params.r2 > 0.0) {
    // D[Sz] decays the electron coherence at half its rate, so the pure
    // dephasing dissipator carries 2*r2.
    out.m += (2.0 * params.r2) * dissipator(ops.sz);
  }
  if (params.pump > 0.0) {
    out.m += params.pump * dissipator(ops.electron_plus());
  }
  return out;
}

SuperOperator liouvillian_at(const ModelParams& params, double t) {
  SuperOperator out = coherent_superoperator(hamiltonian_at(params, t));
  out.m += relaxation_superoperator(params).m;
  return out;
}

LiouvillianFamily::LiouvillianFamily(const ModelParams& params)
    : omega1(params.omega1), fm(params.fm) {
  params.validate();
  static const SpinOperatorSet ops = build_spin_operators();
  ModelParams frozen = params;
  frozen.omega1 = 0.0;
  static_part = coherent_superoperator(hamiltonian_at(frozen, 0.0)).m +
                relaxation_superoperator(params).m;
  modulation_part = coherent_superoperator(ops.sz).m;
}

Mat16 LiouvillianFamily::at_time(double t) const {
  return at_drive(std::cos(2.0 * std::numbers::pi * fm * t));
}

}  // namespace lacspin
