#include "lacspin/lockin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lacspin/sweep.hpp"

namespace lacspin {

double Quadratures::magnitude() const { return std::hypot(x, y); }

double observable_value(const Vec16& v, Observable which) {
  // alpha-population: rho_aa,aa + rho_ab,ab (vec indices 0 and 5).
  const double alpha_pop =
      v(vec_index(0, 0)).real() + v(vec_index(1, 1)).real();
  switch (which) {
    case Observable::electron_alpha_population:
      return alpha_pop;
    case Observable::electron_polarization:
      return alpha_pop - 0.5;
    case Observable::nuclear_polarization:
      // tr(rho * (1 (x) Iz)) with Iz diagonal (-1/2, 1/2, -1/2, 1/2).
      return 0.5 * (-v(vec_index(0, 0)).real() + v(vec_index(1, 1)).real() -
                    v(vec_index(2, 2)).real() + v(vec_index(3, 3)).real());
  }
  return 0.0;
}

std::vector<double> observable_series(const PeriodPropagation& traj,
                                      Observable which) {
  if (traj.trajectory.empty())
    throw InvalidArgumentError("observable_series: empty trajectory");
  std::vector<double> out;
  out.reserve(traj.trajectory.size());
  for (const DensityMatrix& rho : traj.trajectory)
    out.push_back(observable_value(rho.vec(), which));
  return out;
}

Quadratures quadratures(std::span<const double> series, double fm,
                        Observable tag) {
  if (series.size() < 8)
    throw InvalidArgumentError(
        "quadratures: fewer than 8 samples (insufficient resolution)");
  if (!(fm > 0.0)) throw InvalidArgumentError("quadratures: fm must be > 0");
  const size_t n = series.size() - 1;  // endpoints both present
  double x = 0.0, y = 0.0;
  for (size_t k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    const double phase =
        2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(n));
    x += w * series[k] * std::cos(phase);
    y += w * series[k] * std::sin(phase);
  }
  // Trapezoid with dt = T/n and the 1/T prefactor of the Fourier integrals.
  Quadratures q;
  q.x = x / static_cast<double>(n);
  q.y = y / static_cast<double>(n);
  q.observable = tag;
  return q;
}

double phase_rotate(const Quadratures& q, double phi) {
  return q.x * std::cos(phi) + q.y * std::sin(phi);
}

namespace {

double p2p_at(const Spectrum& s, double phi) {
  double lo = 1e300, hi = -1e300;
  const double c = std::cos(phi), sn = std::sin(phi);
  for (const auto& p : s.points) {
    const double v = p.q.x * c + p.q.y * sn;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

double wrap_half_turn(double phi) {
  const double pi = std::numbers::pi;
  phi = std::fmod(phi, pi);
  if (phi < 0.0) phi += pi;
  return phi;
}

}  // namespace

double best_phase(const Spectrum& spectrum) {
  if (spectrum.points.size() < 3)
    throw InvalidArgumentError("best_phase: need at least 3 spectrum points");
  double maxmag = 0.0;
  for (const auto& p : spectrum.points) maxmag = std::max(maxmag, p.q.magnitude());
  if (maxmag == 0.0)
    throw InvalidArgumentError("best_phase: all-zero spectrum, phase undefined");

  // Principal direction of the mean-centered (X, Y) cloud in closed form.
  double mx = 0.0, my = 0.0;
  for (const auto& p : spectrum.points) {
    mx += p.q.x;
    my += p.q.y;
  }
  mx /= static_cast<double>(spectrum.points.size());
  my /= static_cast<double>(spectrum.points.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : spectrum.points) {
    const double dx = p.q.x - mx, dy = p.q.y - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double pca = 0.5 * std::atan2(2.0 * sxy, sxx - syy);

  // Bracket the peak-to-peak maximum around the principal direction, then
  // refine by golden-section. p2p has period pi in phi.
  const double pi = std::numbers::pi;
  const int coarse = 64;
  double best_phi = pca, best_val = -1.0;
  for (int i = 0; i < coarse; ++i) {
    const double phi = pca - 0.5 * pi + pi * (static_cast<double>(i) / coarse);
    const double v = p2p_at(spectrum, phi);
    if (v > best_val) {
      best_val = v;
      best_phi = phi;
    }
  }
  double lo = best_phi - pi / coarse;
  double hi = best_phi + pi / coarse;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = p2p_at(spectrum, c), fd = p2p_at(spectrum, d);
  for (int it = 0; it < 80 && (hi - lo) > 1e-10; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = p2p_at(spectrum, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = p2p_at(spectrum, d);
    }
  }
  return wrap_half_turn(0.5 * (lo + hi));
}

}  // namespace lacspin
