#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ancsim {

struct NrDb {
  double db;
  bool capped;  ///< true when the error power was exactly zero
};

/// 10*log10(d_power / e_power), capped at +120 dB when e_power == 0.
/// d_power must be positive (UndefinedMetricError otherwise).
NrDb noise_reduction_db(double d_power, double e_power);

/// One step of the exponentially weighted power tracker:
/// forgetting * previous + (1 - forgetting) * sample^2.
double running_power(double previous, double sample, double forgetting);

/// Fraction of samples whose magnitude exceeds rho. Empty series throw
/// InsufficientDataError.
double constraint_violation_ratio(std::span<const double> y, double rho);

/// First index whose windowed error power stays within threshold_db of the
/// final windowed power for the rest of the run. Returns nothing when the
/// final windowed power sits more than threshold_db above the smallest
/// windowed power seen, i.e. the error never settled. window must be
/// shorter than the series (InsufficientDataError otherwise).
std::optional<std::size_t> convergence_index(std::span<const double> e,
                                             std::size_t window,
                                             double threshold_db);

struct MetricsSettings {
  double steady_window_fraction = 0.1;
  std::size_t convergence_window = 256;
  double convergence_threshold_db = 3.0;
};

struct RunSummary {
  double nr_db = 0.0;
  bool nr_capped = false;
  double steady_state_output_power = 0.0;
  std::optional<double> violation_ratio;
  std::optional<std::size_t> convergence_index;
  bool diverged = false;
  double final_gamma = 0.0;
  std::size_t samples = 0;
};

/// Per-sample record of a simulation run plus its summary. All series share
/// one length; the sample index is the position.
struct MetricsLog {
  std::vector<double> x, d, y, y_out, e;
  std::vector<std::uint8_t> mode;  ///< 0 adapt, 1 constrain
  std::vector<double> gamma_t;
  std::vector<double> y_power;
  RunSummary summary;

  std::size_t size() const { return x.size(); }
};

/// Recompute the summary from the series. The steady-state window is the
/// final fraction of samples; violation_ratio is reported over the whole raw
/// output when a constraint threshold is known. A run with zero disturbance
/// power reports 0 dB.
RunSummary summarize(const MetricsLog& log, const MetricsSettings& settings,
                     std::optional<double> rho, bool diverged);

}  // namespace ancsim
