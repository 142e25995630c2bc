#include "ancsim/controller.hpp"

#include <cmath>
#include <string>

#include "ancsim/leak.hpp"

namespace ancsim {

namespace {

bool has_clip_stage(Algorithm a) {
  return a == Algorithm::clipping_fxlms || a == Algorithm::two_grad ||
         a == Algorithm::two_grad_momentum;
}

bool is_constrained(Algorithm a) {
  return a == Algorithm::clipping_fxlms || a == Algorithm::two_grad ||
         a == Algorithm::two_grad_momentum || a == Algorithm::olfxlms_online;
}

bool uses_leak(Algorithm a) {
  return a == Algorithm::leaky || a == Algorithm::olfxlms ||
         a == Algorithm::olfxlms_online;
}

double hard_clip(double y, double rho) {
  if (y > rho) return rho;
  if (y < -rho) return -rho;
  return y;
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::none: return "none";
    case Algorithm::fxlms: return "fxlms";
    case Algorithm::clipping_fxlms: return "clipping-fxlms";
    case Algorithm::leaky: return "leaky";
    case Algorithm::olfxlms: return "olfxlms";
    case Algorithm::olfxlms_online: return "olfxlms-online";
    case Algorithm::two_grad: return "two-grad";
    case Algorithm::two_grad_momentum: return "two-grad-momentum";
  }
  return "unknown";
}

Controller::Controller(ControllerConfig cfg)
    : cfg_(std::move(cfg)),
      shat_(FirFilter(cfg_.secondary_estimate)),
      x_line_(cfg_.length == 0 ? 1 : cfg_.length),
      s_line_(shat_.length()),
      xp_line_(cfg_.length == 0 ? 1 : cfg_.length) {
  if (cfg_.length == 0) throw ConfigError("controller.length must be >= 1");

  const bool adaptive = cfg_.algorithm != Algorithm::none;
  if (adaptive && !(cfg_.mu > 0.0 && std::isfinite(cfg_.mu))) {
    throw ConfigError("controller.mu must be positive");
  }
  mu1_ = cfg_.mu1.value_or(cfg_.mu);
  mu2_ = cfg_.mu2.value_or(cfg_.mu);
  if (adaptive && (!(mu1_ > 0.0) || !(mu2_ > 0.0))) {
    throw ConfigError("controller.mu1 and controller.mu2 must be positive");
  }

  if (!(cfg_.gamma >= 0.0) || !std::isfinite(cfg_.gamma)) {
    throw ConfigError("controller.gamma must be finite and >= 0");
  }
  if (is_constrained(cfg_.algorithm) && !(cfg_.rho > 0.0)) {
    throw ConfigError("controller.rho must be positive for constrained algorithms");
  }
  if (!(cfg_.forgetting >= 0.0 && cfg_.forgetting < 1.0)) {
    throw ConfigError("controller.forgetting must lie in [0, 1)");
  }
  if (cfg_.algorithm == Algorithm::two_grad_momentum &&
      !(cfg_.momentum_beta >= 0.0 && cfg_.momentum_beta < 1.0)) {
    throw ConfigError("controller.beta must lie in [0, 1)");
  }
  if (!(cfg_.weight_limit > 0.0)) {
    throw ConfigError("controller.weight_limit must be positive");
  }

  gamma_ = cfg_.gamma;
  if (cfg_.gamma_matrix) {
    const auto& g = *cfg_.gamma_matrix;
    const auto L = static_cast<Eigen::Index>(cfg_.length);
    if (g.rows() != L || g.cols() != L) {
      throw ConfigError("controller.gamma_matrix must be L x L");
    }
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + g.cwiseAbs().maxCoeff())) {
      throw ConfigError("controller.gamma_matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    if (eig.eigenvalues().minCoeff() < -1e-10 * (1.0 + g.cwiseAbs().maxCoeff())) {
      throw ConfigError("controller.gamma_matrix must be positive semidefinite");
    }
    if (g.isZero(0.0)) {
      gamma_ = 0.0;  // exact zero matrix degenerates to no leak
    } else {
      gamma_mat_ = g;
    }
  }
  configured_gamma_ = gamma_;
  configured_gamma_mat_ = gamma_mat_;

  if (cfg_.algorithm == Algorithm::olfxlms_online) {
    if (cfg_.frame_len == 0) throw ConfigError("controller.frame_len must be >= 1");
    if (!cfg_.inverse_model || cfg_.inverse_model->empty()) {
      throw ConfigError("olfxlms-online requires a trained inverse model");
    }
    yd_filter_ = std::make_unique<StreamingFir>(FirFilter(*cfg_.inverse_model));
  }

  if (uses_leak(cfg_.algorithm) && cfg_.mu * gamma_ >= 1.0) {
    warnings_.push_back("mu*gamma >= 1: the leak flips the weight sign every step");
  }

  w_.assign(cfg_.length, 0.0);
  prev_x_.assign(cfg_.length, 0.0);
  prev_xp_.assign(cfg_.length, 0.0);
  velocity_.assign(cfg_.length, 0.0);
  grad_.assign(cfg_.length, 0.0);
  last_finite_w_ = w_;
}

void Controller::set_weights(std::span<const double> w) {
  if (w.size() != w_.size()) {
    throw ContractViolation("set_weights: expected " + std::to_string(w_.size()) +
                            " taps");
  }
  for (double v : w) {
    if (!std::isfinite(v)) throw ContractViolation("set_weights: non-finite tap");
  }
  std::copy(w.begin(), w.end(), w_.begin());
  last_finite_w_ = w_;
}

double Controller::current_gamma() const {
  if (gamma_mat_) {
    return gamma_mat_->trace() / static_cast<double>(cfg_.length);
  }
  return gamma_;
}

void Controller::configure_leak(const StatisticsSnapshot& stats, bool matrix_form) {
  if (!(stats.G_s > 0.0) || !(stats.eta >= 1.0)) {
    throw ConfigError("olfxlms configuration requires complete statistics "
                      "(positive G_s and eta >= 1)");
  }
  if (stats.eta == 1.0) {
    gamma_ = 0.0;
    gamma_mat_.reset();
  } else if (matrix_form) {
    const auto L = static_cast<Eigen::Index>(cfg_.length);
    if (stats.R_x.rows() != L || stats.R_x.cols() != L) {
      throw ConfigError("olfxlms configuration: R_x must be L x L");
    }
    gamma_mat_ = optimal_gamma(stats.G_s, stats.eta, stats.R_x);
    gamma_ = 0.0;
  } else {
    if (!(stats.sigma_x2 >= 0.0)) {
      throw ConfigError("olfxlms configuration: sigma_x2 must be >= 0");
    }
    gamma_ = optimal_gamma(stats.G_s, stats.eta, stats.sigma_x2);
    gamma_mat_.reset();
  }
  configured_gamma_ = gamma_;
  configured_gamma_mat_ = gamma_mat_;
  cfg_.algorithm = Algorithm::olfxlms;
}

void Controller::reset() {
  std::fill(w_.begin(), w_.end(), 0.0);
  x_line_.clear();
  s_line_.clear();
  xp_line_.clear();
  std::fill(prev_x_.begin(), prev_x_.end(), 0.0);
  std::fill(prev_xp_.begin(), prev_xp_.end(), 0.0);
  std::fill(velocity_.begin(), velocity_.end(), 0.0);
  prev_y_ = 0.0;
  have_prev_ = false;
  gamma_ = configured_gamma_;
  gamma_mat_ = configured_gamma_mat_;
  y_power_ = 0.0;
  mode_ = BranchMode::adapt;
  step_count_ = 0;
  skipped_ = 0;
  if (yd_filter_) yd_filter_->clear();
  acc_d2_ = acc_yd2_ = acc_x2_ = 0.0;
  frame_fill_ = 0;
  degenerate_frames_ = 0;
  last_finite_w_ = w_;
}

StepResult Controller::step(double x, double e) {
  if (cfg_.algorithm == Algorithm::olfxlms_online) {
    throw ContractViolation("olfxlms-online steps need a disturbance estimate");
  }
  if (have_prev_) {
    apply_update(e, nullptr);
    check_weights();
  }
  return filter_phase(x);
}

StepResult Controller::step(double x, double e, double d_estimate) {
  if (cfg_.algorithm != Algorithm::olfxlms_online) {
    throw ContractViolation("disturbance estimate is only consumed by olfxlms-online");
  }
  if (have_prev_) {
    apply_update(e, &d_estimate);
    check_weights();
  }
  return filter_phase(x);
}

void Controller::apply_update(double e, const double* d_estimate) {
  switch (cfg_.algorithm) {
    case Algorithm::none:
      mode_ = BranchMode::adapt;
      break;
    case Algorithm::fxlms:
    case Algorithm::clipping_fxlms:
      mode_ = BranchMode::adapt;
      adapt_step(cfg_.mu, e);
      break;
    case Algorithm::leaky:
    case Algorithm::olfxlms:
      mode_ = BranchMode::adapt;
      if (gamma_mat_) {
        matrix_leak_step(cfg_.mu, e);
      } else {
        leaky_step(cfg_.mu, gamma_, e);
      }
      break;
    case Algorithm::olfxlms_online:
      mode_ = BranchMode::adapt;
      if (gamma_mat_) {
        matrix_leak_step(cfg_.mu, e);
      } else {
        leaky_step(cfg_.mu, gamma_, e);
      }
      if (d_estimate) accumulate_online(*d_estimate);
      break;
    case Algorithm::two_grad:
      two_grad_step(e, /*with_momentum=*/false);
      break;
    case Algorithm::two_grad_momentum:
      two_grad_step(e, /*with_momentum=*/true);
      break;
  }
}

void Controller::adapt_step(double step_size, double e) {
  for (std::size_t i = 0; i < w_.size(); ++i) {
    w_[i] += step_size * e * prev_xp_[i];
  }
}

void Controller::leaky_step(double step_size, double gamma, double e) {
  const double decay = 1.0 - step_size * gamma;
  if (decay == 1.0) {
    // Exactly the plain update; keeps gamma == 0 bit-identical to fxlms.
    adapt_step(step_size, e);
    return;
  }
  for (std::size_t i = 0; i < w_.size(); ++i) {
    w_[i] = decay * w_[i] + step_size * e * prev_xp_[i];
  }
}

void Controller::matrix_leak_step(double step_size, double e) {
  const auto L = static_cast<Eigen::Index>(w_.size());
  leak_tmp_ = (*gamma_mat_) * Eigen::Map<const Eigen::VectorXd>(w_.data(), L);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    w_[i] = w_[i] - step_size * leak_tmp_(static_cast<Eigen::Index>(i)) +
            step_size * e * prev_xp_[i];
  }
}

void Controller::fill_adapt_gradient(double e) {
  for (std::size_t i = 0; i < w_.size(); ++i) {
    grad_[i] = mu1_ * e * prev_xp_[i];
  }
}

bool Controller::fill_branch_increment(double e) {
  const bool normalized = cfg_.constraint_mode == ConstraintMode::average_power;
  if (mode_ == BranchMode::adapt) {
    if (!normalized) {
      fill_adapt_gradient(e);
      return true;
    }
    // Descend the normalized instantaneous error gradient -2 e x' with
    // effective step mu1 / 2.
    double norm2 = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      grad_[i] = 2.0 * e * prev_xp_[i];
      norm2 += grad_[i] * grad_[i];
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return false;
    const double scale = mu1_ / (2.0 * norm);
    for (std::size_t i = 0; i < w_.size(); ++i) grad_[i] = scale * grad_[i];
    return true;
  }
  if (!normalized) {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      grad_[i] = -(mu2_ * prev_y_) * prev_x_[i];
    }
    return true;
  }
  // Normalized output-power gradient 2 y x, descended with step mu2 / 2.
  double norm2 = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    grad_[i] = 2.0 * prev_y_ * prev_x_[i];
    norm2 += grad_[i] * grad_[i];
  }
  const double norm = std::sqrt(norm2);
  if (norm == 0.0) return false;
  const double scale = -(mu2_ / (2.0 * norm));
  for (std::size_t i = 0; i < w_.size(); ++i) grad_[i] = scale * grad_[i];
  return true;
}

void Controller::two_grad_step(double e, bool with_momentum) {
  bool within;
  if (cfg_.constraint_mode == ConstraintMode::instantaneous_amplitude) {
    within = std::abs(prev_y_) <= cfg_.rho;  // tie takes the adapt branch
  } else {
    within = y_power_ <= cfg_.rho * cfg_.rho;
  }
  mode_ = within ? BranchMode::adapt : BranchMode::constrain;

  if (!fill_branch_increment(e)) {
    ++skipped_;
    return;
  }
  if (with_momentum) {
    const double beta = cfg_.momentum_beta;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      velocity_[i] = beta * velocity_[i] + grad_[i];
      w_[i] += velocity_[i];
    }
  } else {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] += grad_[i];
  }
}

void Controller::accumulate_online(double d_estimate) {
  const double yd = yd_filter_->process(d_estimate);
  acc_d2_ += d_estimate * d_estimate;
  acc_yd2_ += yd * yd;
  ++frame_fill_;
  if (frame_fill_ < cfg_.frame_len) return;

  if (acc_yd2_ == 0.0) {
    // Unexcited inverse model; keep the previous leak.
    ++degenerate_frames_;
  } else if (acc_d2_ == 0.0) {
    gamma_ = 0.0;
  } else {
    const double k = static_cast<double>(cfg_.frame_len);
    const double G = acc_d2_ / acc_yd2_;
    const double sigma_d2 = acc_d2_ / k;
    const double sigma_x2 = acc_x2_ / k;
    const double eta = degree_of_nonlinearity(sigma_d2, G, cfg_.rho * cfg_.rho);
    gamma_ = optimal_gamma(G, eta, sigma_x2);
  }
  acc_d2_ = acc_yd2_ = acc_x2_ = 0.0;
  frame_fill_ = 0;
}

void Controller::check_weights() {
  for (double v : w_) {
    if (!std::isfinite(v) || std::abs(v) > cfg_.weight_limit) {
      throw DivergenceError("control weights diverged at step " +
                                std::to_string(step_count_),
                            step_count_, last_finite_w_);
    }
  }
  last_finite_w_ = w_;
}

StepResult Controller::filter_phase(double x) {
  if (!std::isfinite(x)) {
    throw DivergenceError("non-finite reference sample at step " +
                              std::to_string(step_count_),
                          step_count_, last_finite_w_);
  }
  x_line_.push(x);
  s_line_.push(x);
  const double y = x_line_.dot(w_);
  const double xp = s_line_.dot(shat_.taps());
  xp_line_.push(xp);

  x_line_.copy_to(prev_x_);
  xp_line_.copy_to(prev_xp_);
  prev_y_ = y;
  have_prev_ = true;

  y_power_ = cfg_.forgetting * y_power_ + (1.0 - cfg_.forgetting) * y * y;
  if (yd_filter_) acc_x2_ += x * x;

  ++step_count_;
  const double y_out = has_clip_stage(cfg_.algorithm) ? hard_clip(y, cfg_.rho) : y;
  return {y, y_out};
}

}  // namespace ancsim
