#pragma once

#include <optional>
#include <span>

#include <Eigen/Dense>

namespace ancsim {

/// Second-order statistics of a measurement run plus the tuning quantities
/// derived from them. Estimation fills the moment fields; the leak-tuning
/// pipeline fills power gain, degree of nonlinearity, and the optimal
/// Lagrangian/leak factors.
struct StatisticsSnapshot {
  double sigma_d2 = 0.0;  ///< disturbance power
  double sigma_x2 = 0.0;  ///< reference power
  std::optional<double> sigma_yo2;   ///< optimal control-output power
  std::optional<double> sigma_ypo2;  ///< filtered optimal-output power
  Eigen::MatrixXd R_x;    ///< autocorrelation matrix of the reference
  Eigen::MatrixXd R_xp;   ///< autocorrelation matrix of the filtered reference
  Eigen::VectorXd P_dxp;  ///< cross-correlation of disturbance and filtered reference
  std::optional<Eigen::MatrixXd> R_y;  ///< diagnostic only; no consumer
  double G_s = 0.0;       ///< secondary-path power gain
  double eta = 1.0;       ///< degree of nonlinearity, >= 1
  double lambda_o = 0.0;  ///< optimal Lagrangian factor, >= 0
  double gamma_o = 0.0;   ///< optimal scalar leak
  std::optional<Eigen::MatrixXd> gamma_matrix;  ///< matrix-leak form
};

/// Biased (1/N) sample moments of a measurement: sigma_d2, sigma_x2, and the
/// L x L Toeplitz autocorrelation matrices of x and x' plus the length-L
/// cross-correlation P_dxp[i] = mean of d(n) * x'(n - i).
///
/// Sequences must have equal length >= 10 * L, otherwise
/// InsufficientDataError. Biased lag estimates keep the Toeplitz matrices
/// positive semidefinite.
StatisticsSnapshot estimate_statistics(std::span<const double> x,
                                       std::span<const double> d,
                                       std::span<const double> xp,
                                       std::size_t L);

}  // namespace ancsim
