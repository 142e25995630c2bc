#pragma once

#include "ancsim/errors.hpp"

namespace ancsim {

enum class SaturationKind { none, hard_clip, scaled_tanh };

/// Output nonlinearity of the actuation chain. hard_clip limits the sample
/// magnitude to the threshold exactly; scaled_tanh maps y to
/// threshold * tanh(y / threshold), which stays strictly inside the
/// threshold; none is the identity.
class SaturationModel {
public:
  SaturationModel() : kind_(SaturationKind::none), threshold_(0.0) {}
  SaturationModel(SaturationKind kind, double threshold);

  double apply(double y) const;

  SaturationKind kind() const { return kind_; }
  double threshold() const { return threshold_; }

private:
  SaturationKind kind_;
  double threshold_;
};

}  // namespace ancsim
