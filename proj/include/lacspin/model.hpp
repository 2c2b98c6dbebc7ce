#ifndef LACSPIN_MODEL_HPP
#define LACSPIN_MODEL_HPP

#include "lacspin/errors.hpp"
#include "lacspin/types.hpp"

namespace lacspin {

// Physical and numerical parameters of the modulated two-spin model.
//
// omega0, v_perturb, hfc, omega1 and the three rates are angular frequencies
// in arbitrary units; fm is a cyclic frequency and enters the Hamiltonian as
// 2*pi*fm*t. The Hamiltonian is
//
//   H(t) = omega0*Sz + v_perturb*Sx + hfc*(S.I) + omega1*cos(2*pi*fm*t)*Sz
//
struct ModelParams {
  double omega0 = 0.0;     // gamma*B0, Zeeman term on the electron
  double v_perturb = 0.0;  // level-mixing perturbation V on Sx
  double hfc = 0.0;        // isotropic hyperfine constant A
  double omega1 = 0.0;     // modulation amplitude
  double fm = 1.0;         // modulation frequency (cyclic)
  double r1 = 0.0;         // electron spin-lattice relaxation rate
  double r2 = 0.0;         // electron pure-dephasing rate
  double pump = 0.0;       // optical pumping rate, alpha -> beta
  long n_steps = 2;        // sub-intervals per modulation period

  double period() const { return 1.0 / fm; }

  // Throws InvalidArgumentError listing every violated invariant.
  void validate() const;
};

// Electron operators S_{x,y,z} (x) 1 and nuclear operators 1 (x) I_{x,y,z}
// in the fixed product basis. Two fictitious spin-1/2 degrees of freedom.
struct SpinOperatorSet {
  Mat4 sx, sy, sz;
  Mat4 ix, iy, iz;

  // Electron raising operator S+ = Sx + i*Sy; maps alpha (m=-1/2) to beta.
  Mat4 electron_plus() const;
  Mat4 electron_minus() const;
};

SpinOperatorSet build_spin_operators();

// 4x4 Hermitian unit-trace state with its 16-component vectorized view.
class DensityMatrix {
 public:
  DensityMatrix() : m_(Mat4::Zero()) {}
  explicit DensityMatrix(const Mat4& m) : m_(m) {}

  static DensityMatrix maximally_mixed();
  static DensityMatrix from_vec(const Vec16& v);

  const Mat4& matrix() const { return m_; }
  Mat4& matrix() { return m_; }
  Vec16 vec() const;

  double trace_deviation() const;       // |tr(rho) - 1|
  double hermiticity_deviation() const; // max elementwise |rho - rho^dagger|
  double min_eigenvalue() const;        // of the hermitized matrix

  // Checks the type invariants (Hermitian to 1e-10, unit trace to 1e-10,
  // eigenvalues >= -1e-8); throws InvalidArgumentError on violation.
  void validate() const;

 private:
  Mat4 m_;
};

// 16x16 generator or propagator acting on vectorized density matrices.
struct SuperOperator {
  enum class Kind { generator, propagator };

  Mat16 m = Mat16::Zero();
  Kind kind = Kind::generator;

  // For a generator: max |sum_i L_{(ii),(kl)}| over columns (exact trace
  // conservation gives 0). For a propagator: max |sum_i P_{(ii),(kl)} -
  // delta| deviation of the trace functional from invariance.
  double trace_defect() const;

  Vec16 apply(const Vec16& v) const { return m * v; }
  DensityMatrix apply(const DensityMatrix& rho) const;
};

// H(t) of the model, assembled literally from the stored parameters.
Mat4 hamiltonian_at(const ModelParams& params, double t);

// 16x16 realization of rho -> -i[H, rho] under the row-major vec map;
// elementwise L_{(ij),(kl)} = i*(delta_ik H_lj - delta_jl H_ik).
SuperOperator coherent_superoperator(const Mat4& h);

// Lindblad dissipator D[c] rho = c rho c^dag - 1/2 {c^dag c, rho},
// vectorized. Exposed for tests and for assembling custom models.
Mat16 dissipator(const Mat4& c);

// Relaxation/pumping model acting on the electron factor only:
//   - S+ and S- jumps, each at rate r1/2 (population difference decays at r1)
//   - Sz dephasing scaled so the added coherence decay equals r2
//   - S+ pumping jump at rate `pump` (alpha -> beta)
// Nuclear relaxation is absent.
SuperOperator relaxation_superoperator(const ModelParams& params);

// Full generator of Eq.-of-motion: coherent part at time t plus relaxation.
SuperOperator liouvillian_at(const ModelParams& params, double t);

// Precomputed split L(t) = static_part + omega1*cos(2*pi*fm*t)*modulation_part
// used by the propagation hot loop. The modulation part is the coherent
// super-operator of Sz alone (unscaled).
struct LiouvillianFamily {
  Mat16 static_part;
  Mat16 modulation_part;
  double omega1 = 0.0;
  double fm = 1.0;

  explicit LiouvillianFamily(const ModelParams& params);

  // Generator with the drive factor cos_value = cos(2*pi*fm*t) already
  // evaluated; keeps the stepper's index-based phase grid exact.
  Mat16 at_drive(double cos_value) const {
    return static_part + (omega1 * cos_value) * modulation_part;
  }
  Mat16 at_time(double t) const;
};

}  // namespace lacspin

#endif
