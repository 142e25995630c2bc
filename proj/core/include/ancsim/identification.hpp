#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ancsim/fir.hpp"
#include "ancsim/noise.hpp"

namespace ancsim {

/// LMS identification run configuration. Excitation defaults to unit white
/// noise, which is persistently exciting for any FIR length.
struct IdentifySpec {
  std::size_t length = 16;
  double mu = 0.01;
  NoiseSpec excitation{};
  std::size_t iterations = 100000;
};

struct IdentificationResult {
  FirFilter estimate;
  double misalignment;  ///< ||estimate - true|| / ||true||
  std::size_t iterations;
};

/// Identify a path by exciting it and adapting an FIR model with LMS.
/// Non-finite or exploding weights abort with IdentificationError carrying
/// the iteration index.
IdentificationResult identify_secondary_path(const FirFilter& true_path,
                                             const IdentifySpec& spec);

/// Delayed-inverse training configuration. The modeling delay defaults to
/// half the inverse length, the standard choice when the path is not
/// minimum phase.
struct InverseModelSpec {
  std::size_t length = 32;
  std::optional<std::size_t> modeling_delay;  ///< default length / 2
  double mu = 0.01;
  NoiseSpec excitation{};
  std::size_t iterations = 200000;
};

struct InverseModelResult {
  FirFilter inverse;
  std::size_t modeling_delay;
  double residual;  ///< squared deviation of s * c from the delayed delta
};

/// Train the FIR inverse c of a path by adaptive inverse modeling: excite
/// the path, then adapt c so that c applied to the path output reproduces
/// the delayed excitation. All-zero paths throw NoInverseError.
InverseModelResult inverse_model(const FirFilter& s, const InverseModelSpec& spec);

/// Streaming convolution of a disturbance record through the trained
/// inverse; predicts the control signal that would reproduce it.
std::vector<double> predict_control(const FirFilter& c, std::span<const double> d);

}  // namespace ancsim
