#include "ancsim/saturation.hpp"

#include <cmath>

namespace ancsim {

SaturationModel::SaturationModel(SaturationKind kind, double threshold)
    : kind_(kind), threshold_(threshold) {
  if (kind_ != SaturationKind::none &&
      !(std::isfinite(threshold_) && threshold_ > 0.0)) {
    throw ConfigError("saturation threshold must be finite and positive");
  }
}

double SaturationModel::apply(double y) const {
  switch (kind_) {
    case SaturationKind::none:
      return y;
    case SaturationKind::hard_clip:
      if (y > threshold_) return threshold_;
      if (y < -threshold_) return -threshold_;
      return y;
    case SaturationKind::scaled_tanh:
      return threshold_ * std::tanh(y / threshold_);
  }
  return y;
}

}  // namespace ancsim
