#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <variant>
#include <vector>

#include "ancsim/fir.hpp"

namespace ancsim {

/// Identifier of the sample-generation algorithm, recorded in run reports so
/// a log can be tied to the generator that produced it. Bump when the
/// algorithm changes.
inline constexpr const char* kNoiseGeneratorId = "mt19937_64-boxmuller-v1";

struct WhiteNoiseSpec {
  double sigma = 1.0;
  std::uint64_t seed = 1;
  bool operator==(const WhiteNoiseSpec&) const = default;
};

struct SineSpec {
  double frequency_hz = 500.0;
  double amplitude = 1.0;
  double phase_rad = 0.0;
  bool operator==(const SineSpec&) const = default;
};

struct BandLimitedSpec {
  double sigma = 1.0;
  std::uint64_t seed = 1;
  std::vector<double> shaping{1.0};  // FIR applied to the white driver
  bool operator==(const BandLimitedSpec&) const = default;
};

struct NoiseSpec;

struct MixtureSpec {
  std::vector<NoiseSpec> components;
  bool operator==(const MixtureSpec&) const;
};

/// Reference-noise description. Identical specs generate bit-identical
/// sample streams.
struct NoiseSpec {
  std::variant<WhiteNoiseSpec, SineSpec, BandLimitedSpec, MixtureSpec> source =
      WhiteNoiseSpec{};
  double sample_rate = 16000.0;
  bool operator==(const NoiseSpec&) const = default;
};

inline bool MixtureSpec::operator==(const MixtureSpec& other) const {
  return components == other.components;
}

/// Deterministic sample stream for a NoiseSpec. Construction validates the
/// spec (sigma >= 0, 0 <= frequency < Nyquist, positive sample rate).
class NoiseGenerator {
public:
  explicit NoiseGenerator(const NoiseSpec& spec);
  NoiseGenerator(NoiseGenerator&&) noexcept = default;
  NoiseGenerator& operator=(NoiseGenerator&&) noexcept = default;

  double next();

private:
  struct White {
    std::mt19937_64 rng;
    double sigma = 1.0;
    double cached = 0.0;
    bool have_cached = false;
    double gaussian();
  };
  struct Sine {
    double omega = 0.0;  // rad per sample
    double amplitude = 1.0;
    double phase = 0.0;
    std::uint64_t n = 0;
  };
  struct Band {
    White driver;
    std::unique_ptr<StreamingFir> shaping;
  };
  struct Mixture {
    std::vector<NoiseGenerator> children;
  };

  std::variant<White, Sine, Band, Mixture> state_;
};

/// n deterministic samples for the spec.
std::vector<double> generate(const NoiseSpec& spec, std::size_t n);

}  // namespace ancsim
