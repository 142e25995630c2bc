#include "ancsim/tune.hpp"

#include "ancsim/simulation.hpp"

namespace ancsim {

StatisticsSnapshot tune_leak(const ScenarioConfig& cfg, TuneMethod method) {
  if (!cfg.controller.rho) {
    throw ConfigError("tune-leak requires controller.rho (the output constraint)");
  }
  const double rho = *cfg.controller.rho;
  const double rho2 = rho * rho;

  const FirFilter shat = resolve_secondary_estimate(cfg);

  // Measurement pass, no control: the disturbance and the filtered reference
  // as the controller would see them.
  const std::size_t n = cfg.tuning.measure_samples;
  const std::vector<double> x = generate(cfg.noise, n);
  StreamingFir primary{FirFilter(cfg.primary_path)};
  StreamingFir reference{shat};
  std::vector<double> d(n), xp(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = primary.process(x[i]);
    xp[i] = reference.process(x[i]);
  }

  StatisticsSnapshot snap = estimate_statistics(x, d, xp, cfg.controller.length);

  if (method == TuneMethod::band_integral) {
    snap.G_s = band_power_gain(shat, cfg.tuning.omega1, cfg.tuning.omega2,
                               cfg.tuning.grid);
  } else {
    // The inverse model is calibrated through the true plant; the gain is the
    // energy ratio of the disturbance to the control signal predicted for it.
    const auto inv = inverse_model(FirFilter(cfg.secondary_path), cfg.tuning.inverse);
    const std::vector<double> yd = predict_control(inv.inverse, d);
    snap.G_s = frame_power_gain(d, yd);
  }

  snap.eta = degree_of_nonlinearity(snap.sigma_d2, snap.G_s, rho2);
  snap.lambda_o = optimal_lambda(shat, snap.eta);
  snap.gamma_o = optimal_gamma(snap.G_s, snap.eta, snap.sigma_x2);
  snap.gamma_matrix = optimal_gamma(snap.G_s, snap.eta, snap.R_x);
  return snap;
}

}  // namespace ancsim
