#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ancsim/fir.hpp"
#include "ancsim/statistics.hpp"

namespace ancsim {

enum class Algorithm {
  none,
  fxlms,
  clipping_fxlms,
  leaky,
  olfxlms,
  olfxlms_online,
  two_grad,
  two_grad_momentum,
};

enum class ConstraintMode { instantaneous_amplitude, average_power };

enum class BranchMode : std::uint8_t { adapt = 0, constrain = 1 };

struct ControllerConfig {
  Algorithm algorithm = Algorithm::none;
  std::size_t length = 16;  ///< control filter taps L

  /// Secondary-path estimate used to form the filtered reference.
  std::vector<double> secondary_estimate{1.0};

  double mu = 0.01;
  std::optional<double> mu1;  ///< error-descent step; defaults to mu
  std::optional<double> mu2;  ///< constraint-descent step; defaults to mu

  double gamma = 0.0;  ///< scalar leak
  std::optional<Eigen::MatrixXd> gamma_matrix;  ///< matrix leak (weight decay)

  double rho = std::numeric_limits<double>::infinity();  ///< amplitude constraint
  ConstraintMode constraint_mode = ConstraintMode::instantaneous_amplitude;
  double forgetting = 0.999;   ///< running E{y^2} tracker factor
  double momentum_beta = 0.9;  ///< momentum variant only

  std::size_t frame_len = 256;  ///< K, online leak re-estimation frame
  /// Trained inverse-model taps, required by olfxlms_online.
  std::optional<std::vector<double>> inverse_model;

  double weight_limit = 1e6;  ///< divergence guard
};

struct StepResult {
  double y;      ///< raw control-filter output
  double y_out;  ///< emitted output after the algorithm's clip stage
};

/// Per-sample adaptive controller with a single step contract shared by all
/// algorithms.
///
/// The surrounding loop measures the error caused by an emitted sample one
/// sample later, so step(x, e) first applies the weight update for the
/// previous sample -- pairing the newly arrived error with the filtered
/// reference, raw reference, and raw output saved by the previous call, which
/// keeps the update rules aligned on equal sample indices -- and then filters
/// the new reference sample through the updated weights.
///
/// Weights are checked after every update; a non-finite or out-of-range tap
/// aborts with DivergenceError carrying the step index and the last finite
/// weight snapshot.
class Controller {
public:
  explicit Controller(ControllerConfig cfg);

  StepResult step(double x, double e);
  /// olfxlms_online variant: also consumes a disturbance estimate that feeds
  /// the frame-wise leak re-estimation.
  StepResult step(double x, double e, double d_estimate);

  /// Zero weights and clear all buffers, trackers, and frame accumulators;
  /// configuration (mu, rho, configured leak) is retained.
  void reset();

  /// Install the optimal leak derived from measured statistics and switch the
  /// algorithm to olfxlms. With matrix_form the R_x-shaped leak is used as
  /// weight decay; otherwise the scalar white-noise form. eta == 1 always
  /// installs a zero scalar leak.
  void configure_leak(const StatisticsSnapshot& stats, bool matrix_form = false);

  std::span<const double> weights() const { return w_; }
  void set_weights(std::span<const double> w);

  BranchMode mode_flag() const { return mode_; }
  /// Scalar view of the current leak; matrix leak reports trace/L.
  double current_gamma() const;
  double power_estimate() const { return y_power_; }
  std::size_t steps() const { return step_count_; }
  std::size_t skipped_updates() const { return skipped_; }
  std::size_t degenerate_frames() const { return degenerate_frames_; }
  const ControllerConfig& config() const { return cfg_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

private:
  void apply_update(double e, const double* d_estimate);
  void adapt_step(double step_size, double e);
  void leaky_step(double step_size, double gamma, double e);
  void matrix_leak_step(double step_size, double e);
  void two_grad_step(double e, bool with_momentum);
  void fill_adapt_gradient(double e);
  bool fill_branch_increment(double e);  // false -> update skipped
  void accumulate_online(double d_estimate);
  void check_weights();
  StepResult filter_phase(double x);

  ControllerConfig cfg_;
  double mu1_ = 0.0;
  double mu2_ = 0.0;

  FirFilter shat_;
  std::vector<double> w_;
  DelayLine x_line_;   // reference history, length L
  DelayLine s_line_;   // reference history, length of shat
  DelayLine xp_line_;  // filtered-reference history, length L

  // Snapshots of the previous filter phase; the regressors the next error
  // belongs to.
  std::vector<double> prev_x_;
  std::vector<double> prev_xp_;
  double prev_y_ = 0.0;
  bool have_prev_ = false;

  // Current leak. configure_leak and the online path update these; reset
  // restores the configured values.
  double gamma_ = 0.0;
  std::optional<Eigen::MatrixXd> gamma_mat_;
  double configured_gamma_ = 0.0;
  std::optional<Eigen::MatrixXd> configured_gamma_mat_;

  std::vector<double> velocity_;
  std::vector<double> grad_;  // scratch branch increment
  Eigen::VectorXd leak_tmp_;

  double y_power_ = 0.0;
  BranchMode mode_ = BranchMode::adapt;
  std::size_t step_count_ = 0;
  std::size_t skipped_ = 0;

  // Online leak state.
  std::unique_ptr<StreamingFir> yd_filter_;
  double acc_d2_ = 0.0;
  double acc_yd2_ = 0.0;
  double acc_x2_ = 0.0;
  std::size_t frame_fill_ = 0;
  std::size_t degenerate_frames_ = 0;

  std::vector<double> last_finite_w_;
  std::vector<std::string> warnings_;
};

/// Name of an algorithm as used in scenario files and reports.
const char* algorithm_name(Algorithm a);

}  // namespace ancsim
