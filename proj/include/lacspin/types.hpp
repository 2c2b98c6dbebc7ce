#ifndef LACSPIN_TYPES_HPP
#define LACSPIN_TYPES_HPP

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace lacspin {

using complexd = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Mat16 = Eigen::Matrix<complexd, 16, 16>;
using Vec16 = Eigen::Matrix<complexd, 16, 1>;

// Hilbert-space dimension of the electron-nuclear pair and its Liouville square.
inline constexpr int kDim = 4;
inline constexpr int kDim2 = 16;

// Product basis ordering |m_S m_I> = (aa, ab, ba, bb) with alpha = m = -1/2
// for both spins, so the electron alpha block comes first.
inline constexpr int kAlphaAlpha = 0;
inline constexpr int kAlphaBeta = 1;
inline constexpr int kBetaAlpha = 2;
inline constexpr int kBetaBeta = 3;

// Row-major pairing (i,j) -> 4*i + j between density-matrix elements and the
// 16-component Liouville column vector. All super-operators use this map.
constexpr int vec_index(int i, int j) { return kDim * i + j; }

enum class Observable {
  electron_alpha_population,
  electron_polarization,
  nuclear_polarization,
};

std::string_view observable_name(Observable o);
bool parse_observable(std::string_view name, Observable& out);

}  // namespace lacspin

#endif
