#include "ancsim/identification.hpp"

#include <cmath>
#include <string>

namespace ancsim {

namespace {

constexpr double kWeightLimit = 1e6;

void check_finite(const std::vector<double>& w, std::size_t iteration,
                  const char* what) {
  for (double v : w) {
    if (!std::isfinite(v) || std::abs(v) > kWeightLimit) {
      throw IdentificationError(std::string(what) + " diverged at iteration " +
                                    std::to_string(iteration),
                                iteration);
    }
  }
}

double norm(std::span<const double> v) {
  double acc = 0.0;
  for (double s : v) acc += s * s;
  return std::sqrt(acc);
}

}  // namespace

IdentificationResult identify_secondary_path(const FirFilter& true_path,
                                             const IdentifySpec& spec) {
  if (spec.length == 0) throw ConfigError("identify: length must be >= 1");
  if (!(spec.mu > 0.0)) throw ConfigError("identify: mu must be positive");

  NoiseGenerator excitation(spec.excitation);
  StreamingFir plant(true_path);
  DelayLine u_line(spec.length);
  std::vector<double> w(spec.length, 0.0);

  for (std::size_t it = 0; it < spec.iterations; ++it) {
    const double u = excitation.next();
    const double v = plant.process(u);
    u_line.push(u);
    const double err = v - u_line.dot(w);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += spec.mu * err * u_line[i];
    check_finite(w, it, "identification");
  }

  // Misalignment against the known taps, padding the shorter vector.
  const auto truth = true_path.taps();
  const std::size_t n = std::max(w.size(), truth.size());
  double diff2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < w.size() ? w[i] : 0.0;
    const double b = i < truth.size() ? truth[i] : 0.0;
    diff2 += (a - b) * (a - b);
  }
  const double ref = norm(truth);
  const double misalignment = ref > 0.0 ? std::sqrt(diff2) / ref
                                        : std::sqrt(diff2);
  return {FirFilter(std::move(w)), misalignment, spec.iterations};
}

InverseModelResult inverse_model(const FirFilter& s, const InverseModelSpec& spec) {
  if (s.is_zero()) throw NoInverseError("inverse_model: path is identically zero");
  if (spec.length == 0) throw ConfigError("inverse_model: length must be >= 1");
  if (!(spec.mu > 0.0)) throw ConfigError("inverse_model: mu must be positive");
  const std::size_t delay = spec.modeling_delay.value_or(spec.length / 2);
  if (delay >= spec.length) {
    throw ConfigError("inverse_model: modeling delay must be below the length");
  }

  NoiseGenerator excitation(spec.excitation);
  StreamingFir plant(s);
  DelayLine v_line(spec.length);      // path-output history, input of c
  DelayLine u_delay(delay + 1);       // provides u(n - delay)
  std::vector<double> c(spec.length, 0.0);

  for (std::size_t it = 0; it < spec.iterations; ++it) {
    const double u = excitation.next();
    const double v = plant.process(u);
    v_line.push(v);
    u_delay.push(u);
    const double err = u_delay[delay] - v_line.dot(c);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += spec.mu * err * v_line[i];
    check_finite(c, it, "inverse modeling");
  }

  // Residual ||s * c - delta||^2 against the target delayed impulse.
  const auto cascade = convolve(s.taps(), c);
  double residual = 0.0;
  for (std::size_t i = 0; i < cascade.size(); ++i) {
    const double target = (i == delay) ? 1.0 : 0.0;
    residual += (cascade[i] - target) * (cascade[i] - target);
  }
  return {FirFilter(std::move(c)), delay, residual};
}

std::vector<double> predict_control(const FirFilter& c, std::span<const double> d) {
  StreamingFir inv(c);
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = inv.process(d[i]);
  return out;
}

}  // namespace ancsim
