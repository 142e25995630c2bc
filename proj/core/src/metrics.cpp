#include "ancsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ancsim/errors.hpp"

namespace ancsim {

namespace {

constexpr double kNrCapDb = 120.0;

double window_mean_square(std::span<const double> v, std::size_t begin,
                          std::size_t count) {
  double acc = 0.0;
  for (std::size_t i = begin; i < begin + count; ++i) acc += v[i] * v[i];
  return acc / static_cast<double>(count);
}

}  // namespace

NrDb noise_reduction_db(double d_power, double e_power) {
  if (!(d_power > 0.0)) {
    throw UndefinedMetricError("noise_reduction_db: disturbance power must be positive");
  }
  if (!(e_power >= 0.0)) {
    throw UndefinedMetricError("noise_reduction_db: error power must be >= 0");
  }
  if (e_power == 0.0) return {kNrCapDb, true};
  const double db = 10.0 * std::log10(d_power / e_power);
  if (db > kNrCapDb) return {kNrCapDb, true};
  return {db, false};
}

double running_power(double previous, double sample, double forgetting) {
  if (!(forgetting >= 0.0 && forgetting < 1.0)) {
    throw ConfigError("running_power: forgetting must lie in [0, 1)");
  }
  return forgetting * previous + (1.0 - forgetting) * sample * sample;
}

double constraint_violation_ratio(std::span<const double> y, double rho) {
  if (y.empty()) {
    throw InsufficientDataError("constraint_violation_ratio: empty series");
  }
  std::size_t count = 0;
  for (double v : y) {
    if (std::abs(v) > rho) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(y.size());
}

std::optional<std::size_t> convergence_index(std::span<const double> e,
                                             std::size_t window,
                                             double threshold_db) {
  if (window == 0) throw ConfigError("convergence_index: window must be >= 1");
  if (window >= e.size()) {
    throw InsufficientDataError("convergence_index: window must be shorter than the series");
  }

  // Rolling windowed powers W(0 .. N-window).
  const std::size_t count = e.size() - window + 1;
  std::vector<double> w(count);
  double acc = 0.0;
  for (std::size_t i = 0; i < window; ++i) acc += e[i] * e[i];
  w[0] = acc / static_cast<double>(window);
  for (std::size_t i = 1; i < count; ++i) {
    acc += e[i + window - 1] * e[i + window - 1] - e[i - 1] * e[i - 1];
    w[i] = std::max(acc, 0.0) / static_cast<double>(window);
  }

  const double final_power = w.back();
  const double min_power = *std::min_element(w.begin(), w.end());
  const double ratio_limit = std::pow(10.0, threshold_db / 10.0);

  // The run never settled if the final level is still far above the best
  // level it reached.
  if (final_power > 0.0 &&
      (min_power == 0.0 || final_power / min_power > ratio_limit)) {
    return std::nullopt;
  }

  auto within = [&](double p) {
    if (final_power == 0.0) return p == 0.0;
    if (p == 0.0) return false;
    const double r = p / final_power;
    return r <= ratio_limit && r >= 1.0 / ratio_limit;
  };

  // First index from which every later window stays within the band.
  std::size_t first = count;  // index into w
  for (std::size_t i = count; i-- > 0;) {
    if (!within(w[i])) break;
    first = i;
  }
  if (first == count) return std::nullopt;
  return first;
}

RunSummary summarize(const MetricsLog& log, const MetricsSettings& settings,
                     std::optional<double> rho, bool diverged) {
  RunSummary s;
  s.samples = log.size();
  s.diverged = diverged;
  if (log.size() == 0) return s;

  std::size_t window = static_cast<std::size_t>(
      std::lround(settings.steady_window_fraction * static_cast<double>(log.size())));
  window = std::clamp<std::size_t>(window, 1, log.size());
  const std::size_t begin = log.size() - window;

  const double d_power = window_mean_square(log.d, begin, window);
  const double e_power = window_mean_square(log.e, begin, window);
  if (d_power > 0.0) {
    const NrDb nr = noise_reduction_db(d_power, e_power);
    s.nr_db = nr.db;
    s.nr_capped = nr.capped;
  }
  s.steady_state_output_power = window_mean_square(log.y, begin, window);
  if (rho) {
    s.violation_ratio = constraint_violation_ratio(log.y, *rho);
  }
  if (settings.convergence_window < log.size()) {
    s.convergence_index = convergence_index(log.e, settings.convergence_window,
                                            settings.convergence_threshold_db);
  }
  s.final_gamma = log.gamma_t.empty() ? 0.0 : log.gamma_t.back();
  return s;
}

}  // namespace ancsim
