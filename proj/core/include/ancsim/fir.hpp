#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ancsim/errors.hpp"

namespace ancsim {

/// Immutable FIR tap vector. Construction validates that the filter has at
/// least one tap and that every tap is finite.
class FirFilter {
public:
  explicit FirFilter(std::vector<double> taps);

  static FirFilter zeros(std::size_t length);
  /// delta at `delay` in a filter of `length` taps.
  static FirFilter unit_impulse(std::size_t length, std::size_t delay = 0);

  std::size_t length() const { return taps_.size(); }
  std::span<const double> taps() const { return taps_; }
  double operator[](std::size_t i) const { return taps_[i]; }

  /// Sum of squared taps.
  double energy() const;
  bool is_zero() const;

private:
  std::vector<double> taps_;
};

/// History of the most recent samples, newest first: operator[](0) is the
/// sample pushed last. A fresh line reads all zeros; push() drops the oldest
/// entry.
class DelayLine {
public:
  explicit DelayLine(std::size_t capacity);

  void push(double v);
  double operator[](std::size_t age) const;
  std::size_t capacity() const { return buf_.size(); }
  void clear();

  /// Newest-first copy of the buffer.
  std::vector<double> snapshot() const;

  /// Newest-first copy into preallocated storage of size capacity().
  void copy_to(std::span<double> out) const;

  /// Inner product with `taps`, tap i against the sample i steps old.
  /// taps.size() must equal capacity().
  double dot(std::span<const double> taps) const;

private:
  std::vector<double> buf_;
  std::size_t head_ = 0;  // index of the newest sample
};

/// Inner product of a filter with a same-length history.
double fir_process(const FirFilter& filter, const DelayLine& line);

/// Streaming convolution through a fixed path; owns its input history.
/// Feeding a non-finite sample throws DivergenceError.
class StreamingFir {
public:
  explicit StreamingFir(FirFilter taps);

  double process(double input);
  void clear();
  const FirFilter& filter() const { return taps_; }

private:
  FirFilter taps_;
  DelayLine state_;
  std::size_t count_ = 0;
};

/// Full linear convolution, result length a.size() + b.size() - 1.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

}  // namespace ancsim
