#pragma once

#include "ancsim/scenario.hpp"
#include "ancsim/statistics.hpp"

namespace ancsim {

enum class TuneMethod { band_integral, inverse_model_frame };

/// Pre-control measurement and leak derivation: run the scenario without
/// control, estimate the moments, obtain the secondary-path power gain by
/// the chosen method (band integral of the path model, or the
/// disturbance-to-predicted-control energy ratio through a trained inverse
/// model), then derive eta, lambda_o, and the scalar and matrix leak.
/// Requires controller.rho.
StatisticsSnapshot tune_leak(const ScenarioConfig& cfg, TuneMethod method);

}  // namespace ancsim
