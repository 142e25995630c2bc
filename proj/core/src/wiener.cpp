#include "ancsim/wiener.hpp"

#include <string>

#include "ancsim/errors.hpp"

namespace ancsim {

namespace {

constexpr double kMaxCondition = 1e12;

FirFilter solve_spd(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  if (A.rows() != A.cols() || A.rows() != b.size() || A.rows() == 0) {
    throw ContractViolation("wiener solve: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  if (eig.info() != Eigen::Success) {
    throw SingularMatrixError("wiener solve: eigen decomposition failed",
                              std::numeric_limits<double>::infinity());
  }
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double cond = (lo > 0.0) ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(lo > 0.0) || cond > kMaxCondition) {
    throw SingularMatrixError(
        "wiener solve: system singular or ill-conditioned (cond ~ " +
            std::to_string(cond) + ")",
        cond);
  }
  Eigen::VectorXd w = A.ldlt().solve(b);
  return FirFilter(std::vector<double>(w.data(), w.data() + w.size()));
}

}  // namespace

FirFilter wiener_leaky(const Eigen::MatrixXd& R_xp, const Eigen::VectorXd& P_dxp,
                       double gamma) {
  if (!(gamma >= 0.0)) throw ConfigError("wiener_leaky: gamma must be >= 0");
  Eigen::MatrixXd A = R_xp;
  A.diagonal().array() += gamma;
  return solve_spd(A, P_dxp);
}

FirFilter wiener_leaky(const Eigen::MatrixXd& R_xp, const Eigen::VectorXd& P_dxp,
                       const Eigen::MatrixXd& Gamma) {
  if (Gamma.rows() != R_xp.rows() || Gamma.cols() != R_xp.cols()) {
    throw ContractViolation("wiener_leaky: Gamma and R_xp sizes differ");
  }
  return solve_spd(R_xp + Gamma, P_dxp);
}

FirFilter wiener_constrained(const Eigen::MatrixXd& R_xp,
                             const Eigen::VectorXd& P_dxp, double lambda,
                             double sigma_x2) {
  if (!(lambda >= 0.0) || !(sigma_x2 >= 0.0)) {
    throw ConfigError("wiener_constrained: lambda and sigma_x2 must be >= 0");
  }
  return wiener_leaky(R_xp, P_dxp, lambda * sigma_x2);
}

}  // namespace ancsim
