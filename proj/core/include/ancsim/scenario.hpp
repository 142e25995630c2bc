#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ancsim/controller.hpp"
#include "ancsim/identification.hpp"
#include "ancsim/leak.hpp"
#include "ancsim/metrics.hpp"
#include "ancsim/noise.hpp"
#include "ancsim/saturation.hpp"

namespace ancsim {

enum class EstimateMode { exact, taps, identify };

/// How the controller's secondary-path model is obtained: copied from the
/// true path, supplied tap list (to study mismatch), or identified online.
struct SecondaryEstimateSpec {
  EstimateMode mode = EstimateMode::exact;
  std::vector<double> taps;
  IdentifySpec identify;
};

struct SaturationSpec {
  SaturationKind kind = SaturationKind::none;
  double rho = 0.0;
};

enum class DisturbanceSource { true_disturbance, reconstructed };

struct ScenarioControllerSpec {
  Algorithm algorithm = Algorithm::none;
  std::size_t length = 16;
  double mu = 0.01;
  std::optional<double> mu1;
  std::optional<double> mu2;
  double gamma = 0.0;
  bool matrix_leak = false;
  std::optional<std::string> stats_file;  ///< tuned-leak snapshot JSON
  std::optional<double> rho;
  ConstraintMode constraint_mode = ConstraintMode::instantaneous_amplitude;
  double forgetting = 0.999;
  double beta = 0.9;
  std::size_t frame_len = 256;
  DisturbanceSource d_source = DisturbanceSource::true_disturbance;
  InverseModelSpec inverse;  ///< inverse training for olfxlms-online
};

/// Leak-tuning measurement settings.
struct TuningSpec {
  std::size_t measure_samples = 20000;
  double omega1 = 0.0;
  double omega2 = std::numbers::pi;
  std::size_t grid = kDefaultBandGrid;
  InverseModelSpec inverse;
};

/// A fully validated simulation scenario.
struct ScenarioConfig {
  double sample_rate = 16000.0;
  std::size_t num_samples = 10000;
  std::uint64_t seed = 1;
  NoiseSpec noise;
  std::vector<double> primary_path{1.0};
  std::vector<double> secondary_path{1.0};
  SecondaryEstimateSpec secondary_estimate;
  SaturationSpec saturation;
  ScenarioControllerSpec controller;
  MetricsSettings metrics;
  TuningSpec tuning;
  std::string source_text;  ///< verbatim configuration document
};

/// Parse a scenario from sectioned key/value text or from the equivalent
/// JSON document (detected by a leading '{'). Unknown keys, duplicate keys,
/// type errors, and inconsistent settings are rejected; the ConfigError
/// message lists every violation with its key path.
ScenarioConfig parse_scenario(std::string_view text);

/// parse_scenario over a file's contents. Read failures throw IoError.
ScenarioConfig load_scenario_file(const std::string& path);

/// Normalized JSON echo of a parsed scenario (infinite rho encoded as the
/// string "inf").
std::string scenario_to_json(const ScenarioConfig& cfg, int indent = 2);

const char* estimate_mode_name(EstimateMode m);
const char* saturation_kind_name(SaturationKind k);
const char* constraint_mode_name(ConstraintMode m);
const char* disturbance_source_name(DisturbanceSource s);

}  // namespace ancsim
