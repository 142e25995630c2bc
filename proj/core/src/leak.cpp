#include "ancsim/leak.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ancsim/errors.hpp"

namespace ancsim {

namespace {

// |S(e^jw)|^2 = r0 + 2 * sum_k r_k cos(kw), with r_k the tap
// autocorrelation. Evaluated with the Chebyshev cosine recurrence.
class SpectrumSquared {
public:
  explicit SpectrumSquared(const FirFilter& s) {
    const auto taps = s.taps();
    r_.resize(taps.size());
    for (std::size_t k = 0; k < taps.size(); ++k) {
      double acc = 0.0;
      for (std::size_t l = k; l < taps.size(); ++l) acc += taps[l] * taps[l - k];
      r_[k] = acc;
    }
  }

  double operator()(double omega) const {
    double acc = r_[0];
    if (r_.size() == 1) return acc;
    const double c = std::cos(omega);
    double ck_prev = 1.0;  // cos(0)
    double ck = c;         // cos(w)
    for (std::size_t k = 1; k < r_.size(); ++k) {
      acc += 2.0 * r_[k] * ck;
      const double next = 2.0 * c * ck - ck_prev;
      ck_prev = ck;
      ck = next;
    }
    return acc;
  }

private:
  std::vector<double> r_;
};

}  // namespace

double band_power_gain(const FirFilter& s, double omega1, double omega2,
                       std::size_t grid) {
  if (!(omega1 >= 0.0 && omega1 < omega2 && omega2 <= std::numbers::pi)) {
    throw ConfigError("band_power_gain: need 0 <= omega1 < omega2 <= pi");
  }
  if (grid < 512) {
    throw ConfigError("band_power_gain: grid must be at least 512");
  }

  const SpectrumSquared f(s);

  // Composite Boole rule over panels of four intervals.
  const std::size_t panels = (grid + 3) / 4;
  const double h = (omega2 - omega1) / (4.0 * static_cast<double>(panels));
  double acc = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double w0 = omega1 + 4.0 * h * static_cast<double>(p);
    acc += 7.0 * f(w0) + 32.0 * f(w0 + h) + 12.0 * f(w0 + 2.0 * h) +
           32.0 * f(w0 + 3.0 * h) + 7.0 * f(w0 + 4.0 * h);
  }
  const double integral = acc * (2.0 * h / 45.0);
  return integral / std::numbers::pi;
}

double frame_power_gain(std::span<const double> d_frame,
                        std::span<const double> yd_frame) {
  if (d_frame.empty() || d_frame.size() != yd_frame.size()) {
    throw ContractViolation("frame_power_gain: frames must share a nonzero length");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < d_frame.size(); ++i) {
    num += d_frame[i] * d_frame[i];
    den += yd_frame[i] * yd_frame[i];
  }
  if (den == 0.0) {
    throw DegenerateFrameError(
        "frame_power_gain: predicted-control frame has zero energy");
  }
  return num / den;
}

double degree_of_nonlinearity(double sigma_d2, double G_s, double rho2) {
  if (!(G_s > 0.0)) throw ConfigError("degree_of_nonlinearity: G_s must be positive");
  if (!(rho2 > 0.0)) throw ConfigError("degree_of_nonlinearity: rho2 must be positive");
  if (!(sigma_d2 >= 0.0)) {
    throw ConfigError("degree_of_nonlinearity: sigma_d2 must be non-negative");
  }
  return std::sqrt(std::max(sigma_d2 / (G_s * rho2), 1.0));
}

double optimal_lambda(const FirFilter& s, double eta) {
  if (!(eta >= 1.0)) throw ContractViolation("optimal_lambda: eta must be >= 1");
  return s.energy() * (eta - 1.0);
}

double lambda_from_moments(double sigma_yo2, double sigma_d2,
                           const FirFilter& s, double rho2) {
  if (!(sigma_yo2 > 0.0 && sigma_d2 > 0.0 && rho2 > 0.0)) {
    throw ConfigError("lambda_from_moments: all moments must be positive");
  }
  const double es = s.energy();
  if (!(es > 0.0)) throw ConfigError("lambda_from_moments: path has zero energy");
  const double lambda =
      (sigma_yo2 * es / rho2) * (std::sqrt(sigma_d2 / (es * sigma_yo2)) - 1.0);
  return std::max(lambda, 0.0);
}

double optimal_gamma(double G_s, double eta, double sigma_x2) {
  if (!(eta >= 1.0)) throw ContractViolation("optimal_gamma: eta must be >= 1");
  if (!(G_s >= 0.0) || !(sigma_x2 >= 0.0)) {
    throw ConfigError("optimal_gamma: G_s and sigma_x2 must be non-negative");
  }
  return G_s * (eta - 1.0) * sigma_x2;
}

Eigen::MatrixXd optimal_gamma(double G_s, double eta, const Eigen::MatrixXd& R_x) {
  if (!(eta >= 1.0)) throw ContractViolation("optimal_gamma: eta must be >= 1");
  if (!(G_s >= 0.0)) throw ConfigError("optimal_gamma: G_s must be non-negative");
  return G_s * (eta - 1.0) * R_x;
}

}  // namespace ancsim
