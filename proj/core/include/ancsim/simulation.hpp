#pragma once

#include <functional>
#include <optional>

#include "ancsim/metrics.hpp"
#include "ancsim/scenario.hpp"

namespace ancsim {

/// Per-sample observation hook; called after each completed sample with the
/// controller in its post-step state. Used by tests and tooling that need
/// weight trajectories.
struct SimulationHooks {
  std::function<void(std::size_t n, const Controller& controller)> after_step;
};

/// Secondary-path model per the scenario: exact copy of the true path, the
/// supplied taps, or LMS identification against the true path.
FirFilter resolve_secondary_estimate(const ScenarioConfig& cfg);

/// Build the configured controller around a resolved path estimate; loads the
/// tuned-leak snapshot and trains the online inverse model when the scenario
/// asks for them.
Controller make_controller(const ScenarioConfig& cfg, const FirFilter& shat);
Controller make_controller(const ScenarioConfig& cfg);

/// The amplitude threshold violation metrics are judged against: the
/// controller's rho when set, otherwise the plant saturation threshold.
std::optional<double> effective_rho(const ScenarioConfig& cfg);

/// Closed-loop run: reference -> primary path -> disturbance; controller
/// output -> saturation -> secondary path -> anti-noise; e = d - a, reported
/// to the controller one sample later. Controller divergence truncates the
/// log and sets the diverged flag. Deterministic for a given config.
MetricsLog run_simulation(const ScenarioConfig& cfg,
                          const SimulationHooks* hooks = nullptr);

}  // namespace ancsim
