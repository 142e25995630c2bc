#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "ancsim/fir.hpp"

namespace ancsim {

inline constexpr std::size_t kDefaultBandGrid = 8192;

/// Power gain of a path over the two-sided band +-[omega1, omega2]
/// (radians/sample), normalized so the full band [0, pi] yields the tap
/// energy: (1/pi) * integral of |S(e^jw)|^2 over [omega1, omega2].
/// Integration is composite Boole quadrature on at least `grid` points
/// (grid >= 512). Invalid bands throw ConfigError.
double band_power_gain(const FirFilter& s, double omega1, double omega2,
                       std::size_t grid = kDefaultBandGrid);

/// Frame estimate of the power gain: sum of d^2 over sum of yd^2. Frames
/// must be the same nonzero length; an all-zero yd frame throws
/// DegenerateFrameError.
double frame_power_gain(std::span<const double> d_frame,
                        std::span<const double> yd_frame);

/// sqrt(max(sigma_d2 / (G_s * rho2), 1)); equals 1 while the output
/// constraint is inactive.
double degree_of_nonlinearity(double sigma_d2, double G_s, double rho2);

/// Tap energy of the path times (eta - 1). Requires eta >= 1.
double optimal_lambda(const FirFilter& s, double eta);

/// Moment form of the optimal Lagrangian factor,
/// (sigma_yo2 * E_s / rho2) * (sqrt(sigma_d2 / (E_s * sigma_yo2)) - 1)
/// with E_s the tap energy, floored at zero. All inputs must be positive.
double lambda_from_moments(double sigma_yo2, double sigma_d2,
                           const FirFilter& s, double rho2);

/// Scalar optimal leak G_s * (eta - 1) * sigma_x2 (white-noise sufficient
/// condition). Requires eta >= 1.
double optimal_gamma(double G_s, double eta, double sigma_x2);

/// Matrix form G_s * (eta - 1) * R_x, applied as weight decay (I - mu*G)w.
Eigen::MatrixXd optimal_gamma(double G_s, double eta, const Eigen::MatrixXd& R_x);

}  // namespace ancsim
