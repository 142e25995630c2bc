#include "ancsim/statistics.hpp"

#include <string>

#include "ancsim/errors.hpp"

namespace ancsim {

namespace {

double mean_square(std::span<const double> v) {
  double acc = 0.0;
  for (double s : v) acc += s * s;
  return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

// Biased lag-k autocorrelations r(0..L-1), normalized by N.
std::vector<double> lag_correlations(std::span<const double> v, std::size_t L) {
  std::vector<double> r(L, 0.0);
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < L; ++k) {
    double acc = 0.0;
    for (std::size_t i = k; i < n; ++i) acc += v[i] * v[i - k];
    r[k] = acc / static_cast<double>(n);
  }
  return r;
}

Eigen::MatrixXd toeplitz(const std::vector<double>& r) {
  const auto L = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXd m(L, L);
  for (Eigen::Index i = 0; i < L; ++i) {
    for (Eigen::Index j = 0; j < L; ++j) {
      m(i, j) = r[static_cast<std::size_t>(i > j ? i - j : j - i)];
    }
  }
  return m;
}

}  // namespace

StatisticsSnapshot estimate_statistics(std::span<const double> x,
                                       std::span<const double> d,
                                       std::span<const double> xp,
                                       std::size_t L) {
  if (L == 0) throw ConfigError("estimate_statistics: L must be >= 1");
  if (x.size() != d.size() || x.size() != xp.size()) {
    throw ContractViolation("estimate_statistics: sequences differ in length");
  }
  if (x.size() < 10 * L) {
    throw InsufficientDataError(
        "estimate_statistics: need at least " + std::to_string(10 * L) +
        " samples for L=" + std::to_string(L) + ", got " +
        std::to_string(x.size()));
  }

  StatisticsSnapshot snap;
  snap.sigma_d2 = mean_square(d);
  snap.sigma_x2 = mean_square(x);
  snap.R_x = toeplitz(lag_correlations(x, L));
  snap.R_xp = toeplitz(lag_correlations(xp, L));

  const std::size_t n = x.size();
  snap.P_dxp.resize(static_cast<Eigen::Index>(L));
  for (std::size_t k = 0; k < L; ++k) {
    double acc = 0.0;
    for (std::size_t i = k; i < n; ++i) acc += d[i] * xp[i - k];
    snap.P_dxp(static_cast<Eigen::Index>(k)) = acc / static_cast<double>(n);
  }
  return snap;
}

}  // namespace ancsim
