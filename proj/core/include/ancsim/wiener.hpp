#pragma once

#include <Eigen/Dense>

#include "ancsim/fir.hpp"

namespace ancsim {

/// Optimal control filter with a scalar leak: solves (gamma*I + R_xp) w = P.
/// The system matrix must be symmetric positive definite with condition
/// number below 1e12, otherwise SingularMatrixError carrying the estimate.
FirFilter wiener_leaky(const Eigen::MatrixXd& R_xp, const Eigen::VectorXd& P_dxp,
                       double gamma);

/// Matrix-leak form: solves (Gamma + R_xp) w = P.
FirFilter wiener_leaky(const Eigen::MatrixXd& R_xp, const Eigen::VectorXd& P_dxp,
                       const Eigen::MatrixXd& Gamma);

/// Output-constrained optimum: solves (lambda*sigma_x2*I + R_xp) w = P.
/// Identical to wiener_leaky with gamma = lambda * sigma_x2.
FirFilter wiener_constrained(const Eigen::MatrixXd& R_xp,
                             const Eigen::VectorXd& P_dxp, double lambda,
                             double sigma_x2);

}  // namespace ancsim
