#include "ancsim/simulation.hpp"

#include "ancsim/report.hpp"

namespace ancsim {

FirFilter resolve_secondary_estimate(const ScenarioConfig& cfg) {
  switch (cfg.secondary_estimate.mode) {
    case EstimateMode::exact:
      return FirFilter(cfg.secondary_path);
    case EstimateMode::taps:
      return FirFilter(cfg.secondary_estimate.taps);
    case EstimateMode::identify: {
      auto result = identify_secondary_path(FirFilter(cfg.secondary_path),
                                            cfg.secondary_estimate.identify);
      return result.estimate;
    }
  }
  throw ConfigError("unknown secondary estimate mode");
}

Controller make_controller(const ScenarioConfig& cfg, const FirFilter& shat) {
  const auto& c = cfg.controller;
  ControllerConfig ctl;
  ctl.algorithm = c.algorithm;
  ctl.length = c.length;
  ctl.secondary_estimate.assign(shat.taps().begin(), shat.taps().end());
  ctl.mu = c.mu;
  ctl.mu1 = c.mu1;
  ctl.mu2 = c.mu2;
  ctl.gamma = c.gamma;
  if (c.rho) ctl.rho = *c.rho;
  ctl.constraint_mode = c.constraint_mode;
  ctl.forgetting = c.forgetting;
  ctl.momentum_beta = c.beta;
  ctl.frame_len = c.frame_len;

  if (c.algorithm == Algorithm::olfxlms_online) {
    // The inverse model is trained against the true plant, the same way a
    // deployment would calibrate it by playing probe noise.
    auto inv = inverse_model(FirFilter(cfg.secondary_path), c.inverse);
    ctl.inverse_model =
        std::vector<double>(inv.inverse.taps().begin(), inv.inverse.taps().end());
  }

  if (c.matrix_leak && !c.stats_file) {
    throw ConfigError("controller.matrix_leak requires controller.stats_file");
  }

  Controller controller(std::move(ctl));
  if (c.stats_file) {
    controller.configure_leak(load_statistics_file(*c.stats_file), c.matrix_leak);
  }
  return controller;
}

Controller make_controller(const ScenarioConfig& cfg) {
  return make_controller(cfg, resolve_secondary_estimate(cfg));
}

std::optional<double> effective_rho(const ScenarioConfig& cfg) {
  if (cfg.controller.rho) return *cfg.controller.rho;
  if (cfg.saturation.kind != SaturationKind::none) return cfg.saturation.rho;
  return std::nullopt;
}

MetricsLog run_simulation(const ScenarioConfig& cfg, const SimulationHooks* hooks) {
  const FirFilter shat = resolve_secondary_estimate(cfg);
  Controller controller = make_controller(cfg, shat);
  NoiseGenerator noise(cfg.noise);
  StreamingFir primary{FirFilter(cfg.primary_path)};
  StreamingFir secondary{FirFilter(cfg.secondary_path)};
  const SaturationModel plant =
      cfg.saturation.kind == SaturationKind::none
          ? SaturationModel()
          : SaturationModel(cfg.saturation.kind, cfg.saturation.rho);

  const bool online = cfg.controller.algorithm == Algorithm::olfxlms_online;
  const bool reconstruct =
      online && cfg.controller.d_source == DisturbanceSource::reconstructed;
  std::optional<StreamingFir> shat_recon;
  if (reconstruct) shat_recon.emplace(shat);

  MetricsLog log;
  const std::size_t n_total = cfg.num_samples;
  log.x.reserve(n_total);
  log.d.reserve(n_total);
  log.y.reserve(n_total);
  log.y_out.reserve(n_total);
  log.e.reserve(n_total);
  log.mode.reserve(n_total);
  log.gamma_t.reserve(n_total);
  log.y_power.reserve(n_total);

  bool diverged = false;
  double e_prev = 0.0;
  double d_est_prev = 0.0;
  for (std::size_t n = 0; n < n_total; ++n) {
    const double x = noise.next();
    const double d = primary.process(x);
    StepResult r;
    try {
      r = online ? controller.step(x, e_prev, d_est_prev)
                 : controller.step(x, e_prev);
    } catch (const DivergenceError&) {
      diverged = true;
      break;
    }
    const double emitted = plant.apply(r.y_out);
    const double anti = secondary.process(emitted);
    const double e = d - anti;

    log.x.push_back(x);
    log.d.push_back(d);
    log.y.push_back(r.y);
    log.y_out.push_back(emitted);
    log.e.push_back(e);
    log.mode.push_back(static_cast<std::uint8_t>(controller.mode_flag()));
    log.gamma_t.push_back(controller.current_gamma());
    log.y_power.push_back(controller.power_estimate());

    e_prev = e;
    if (online) {
      d_est_prev = reconstruct ? e + shat_recon->process(emitted) : d;
    }
    if (hooks && hooks->after_step) hooks->after_step(n, controller);
  }

  log.summary = summarize(log, cfg.metrics, effective_rho(cfg), diverged);
  return log;
}

}  // namespace ancsim
