#include "ancsim/fir.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ancsim {

FirFilter::FirFilter(std::vector<double> taps) : taps_(std::move(taps)) {
  if (taps_.empty()) {
    throw ConfigError("FirFilter requires at least one tap");
  }
  for (std::size_t i = 0; i < taps_.size(); ++i) {
    if (!std::isfinite(taps_[i])) {
      throw ConfigError("FirFilter tap " + std::to_string(i) + " is not finite");
    }
  }
}

FirFilter FirFilter::zeros(std::size_t length) {
  return FirFilter(std::vector<double>(length, 0.0));
}

FirFilter FirFilter::unit_impulse(std::size_t length, std::size_t delay) {
  if (delay >= length) {
    throw ConfigError("unit_impulse delay must be less than length");
  }
  std::vector<double> taps(length, 0.0);
  taps[delay] = 1.0;
  return FirFilter(std::move(taps));
}

double FirFilter::energy() const {
  double acc = 0.0;
  for (double t : taps_) acc += t * t;
  return acc;
}

bool FirFilter::is_zero() const {
  for (double t : taps_) {
    if (t != 0.0) return false;
  }
  return true;
}

DelayLine::DelayLine(std::size_t capacity) : buf_(capacity, 0.0) {
  if (capacity == 0) {
    throw ConfigError("DelayLine capacity must be at least 1");
  }
}

void DelayLine::push(double v) {
  head_ = (head_ == 0) ? buf_.size() - 1 : head_ - 1;
  buf_[head_] = v;
}

double DelayLine::operator[](std::size_t age) const {
  std::size_t k = head_ + age;
  if (k >= buf_.size()) k -= buf_.size();
  return buf_[k];
}

void DelayLine::clear() {
  std::fill(buf_.begin(), buf_.end(), 0.0);
  head_ = 0;
}

std::vector<double> DelayLine::snapshot() const {
  std::vector<double> out(buf_.size());
  copy_to(out);
  return out;
}

void DelayLine::copy_to(std::span<double> out) const {
  if (out.size() != buf_.size()) {
    throw ContractViolation("DelayLine::copy_to size mismatch");
  }
  std::size_t i = 0;
  for (std::size_t k = head_; k < buf_.size(); ++k, ++i) out[i] = buf_[k];
  for (std::size_t k = 0; k < head_; ++k, ++i) out[i] = buf_[k];
}

double DelayLine::dot(std::span<const double> taps) const {
  if (taps.size() != buf_.size()) {
    throw ContractViolation("DelayLine::dot length mismatch: " +
                            std::to_string(taps.size()) + " taps vs capacity " +
                            std::to_string(buf_.size()));
  }
  // Two contiguous segments of the ring, walked in age order so the
  // accumulation order is identical for every controller.
  double acc = 0.0;
  std::size_t i = 0;
  for (std::size_t k = head_; k < buf_.size(); ++k, ++i) acc += taps[i] * buf_[k];
  for (std::size_t k = 0; k < head_; ++k, ++i) acc += taps[i] * buf_[k];
  return acc;
}

double fir_process(const FirFilter& filter, const DelayLine& line) {
  if (filter.length() != line.capacity()) {
    throw ContractViolation("fir_process: filter length " +
                            std::to_string(filter.length()) +
                            " does not match delay line capacity " +
                            std::to_string(line.capacity()));
  }
  return line.dot(filter.taps());
}

StreamingFir::StreamingFir(FirFilter taps)
    : taps_(std::move(taps)), state_(taps_.length()) {}

double StreamingFir::process(double input) {
  if (!std::isfinite(input)) {
    throw DivergenceError("non-finite sample fed to path at step " +
                          std::to_string(count_), count_);
  }
  state_.push(input);
  ++count_;
  return state_.dot(taps_.taps());
}

void StreamingFir::clear() {
  state_.clear();
  count_ = 0;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace ancsim
