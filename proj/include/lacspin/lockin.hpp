#ifndef LACSPIN_LOCKIN_HPP
#define LACSPIN_LOCKIN_HPP

#include <span>
#include <vector>

#include "lacspin/propagator.hpp"

namespace lacspin {

// Lock-in output for one observable: X is the cosine Fourier component,
// Y the sine component, both with the 1/T normalization (a pure sinusoid
// of amplitude c yields c/2).
struct Quadratures {
  double x = 0.0;
  double y = 0.0;
  Observable observable = Observable::electron_alpha_population;

  double magnitude() const;
};

// Real-valued series of the requested observable over the trajectory grid.
//   electron_alpha_population: sum over the nuclear index of <alpha m|rho|alpha m>
//   electron_polarization:     the same sum minus 1/2
//   nuclear_polarization:      tr(rho * (1 (x) Iz))
std::vector<double> observable_series(const PeriodPropagation& traj,
                                      Observable which);

// Evaluates one observable directly from a vectorized state.
double observable_value(const Vec16& v, Observable which);

// Trapezoidal Fourier quadratures of a series sampled uniformly over exactly
// one period, both endpoints present. Fewer than 8 samples is an error.
Quadratures quadratures(std::span<const double> series, double fm,
                        Observable tag = Observable::electron_alpha_population);

// Lock-in phase rotation X' = X cos(phi) + Y sin(phi).
double phase_rotate(const Quadratures& q, double phi);

struct Spectrum;  // defined in sweep.hpp

// Phase maximizing the peak-to-peak of the rotated spectrum, reported in
// [0, pi). Closed-form principal direction of the (X, Y) point cloud,
// refined by a bracketing scan plus golden-section search.
double best_phase(const Spectrum& spectrum);

}  // namespace lacspin

#endif
