#include "ancsim/noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ancsim {

namespace {

void validate_rate(double sample_rate) {
  if (!(std::isfinite(sample_rate) && sample_rate > 0.0)) {
    throw ConfigError("noise.sample_rate must be positive");
  }
}

void validate_sigma(double sigma) {
  if (!(std::isfinite(sigma) && sigma >= 0.0)) {
    throw ConfigError("noise sigma must be finite and non-negative");
  }
}

}  // namespace

double NoiseGenerator::White::gaussian() {
  if (have_cached) {
    have_cached = false;
    return cached;
  }
  // Box-Muller on two 53-bit uniforms; u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  cached = r * std::sin(a);
  have_cached = true;
  return r * std::cos(a);
}

NoiseGenerator::NoiseGenerator(const NoiseSpec& spec) {
  validate_rate(spec.sample_rate);
  if (const auto* w = std::get_if<WhiteNoiseSpec>(&spec.source)) {
    validate_sigma(w->sigma);
    state_ = White{std::mt19937_64(w->seed), w->sigma};
  } else if (const auto* s = std::get_if<SineSpec>(&spec.source)) {
    if (!(std::isfinite(s->frequency_hz) && s->frequency_hz >= 0.0 &&
          s->frequency_hz < spec.sample_rate / 2.0)) {
      throw ConfigError("sine frequency must lie in [0, sample_rate/2)");
    }
    if (!std::isfinite(s->amplitude) || !std::isfinite(s->phase_rad)) {
      throw ConfigError("sine amplitude and phase must be finite");
    }
    Sine sine;
    sine.omega = 2.0 * std::numbers::pi * s->frequency_hz / spec.sample_rate;
    sine.amplitude = s->amplitude;
    sine.phase = s->phase_rad;
    state_ = sine;
  } else if (const auto* b = std::get_if<BandLimitedSpec>(&spec.source)) {
    validate_sigma(b->sigma);
    Band band;
    band.driver = White{std::mt19937_64(b->seed), b->sigma};
    band.shaping = std::make_unique<StreamingFir>(FirFilter(b->shaping));
    state_ = std::move(band);
  } else {
    const auto& m = std::get<MixtureSpec>(spec.source);
    if (m.components.empty()) {
      throw ConfigError("mixture noise requires at least one component");
    }
    Mixture mix;
    mix.children.reserve(m.components.size());
    for (const auto& c : m.components) mix.children.emplace_back(c);
    state_ = std::move(mix);
  }
}

double NoiseGenerator::next() {
  if (auto* w = std::get_if<White>(&state_)) {
    return w->sigma * w->gaussian();
  }
  if (auto* s = std::get_if<Sine>(&state_)) {
    const double v = s->amplitude *
                     std::sin(s->omega * static_cast<double>(s->n) + s->phase);
    ++s->n;
    return v;
  }
  if (auto* b = std::get_if<Band>(&state_)) {
    return b->shaping->process(b->driver.sigma * b->driver.gaussian());
  }
  auto& mix = std::get<Mixture>(state_);
  double acc = 0.0;
  for (auto& child : mix.children) acc += child.next();
  return acc;
}

std::vector<double> generate(const NoiseSpec& spec, std::size_t n) {
  NoiseGenerator gen(spec);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = gen.next();
  return out;
}

}  // namespace ancsim
