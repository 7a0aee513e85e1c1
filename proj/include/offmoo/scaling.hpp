#pragma once

#include "offmoo/types.hpp"

namespace offmoo {

/// Per-column affine map of model inputs onto [0,1]; columns with zero
/// extent map to 0.
struct InputScaling {
  Vec offset;  // column minima
  Vec scale;   // column extents, zero extent replaced by 1

  static InputScaling fit(const Mat& X) {
    InputScaling s;
    s.offset = X.colwise().minCoeff();
    s.scale = X.colwise().maxCoeff() - s.offset.transpose();
    for (Eigen::Index i = 0; i < s.scale.size(); ++i) {
      if (s.scale[i] <= 0) s.scale[i] = 1.0;
    }
    return s;
  }

  Vec apply(const Vec& x) const {
    return (x - offset).cwiseQuotient(scale);
  }
  Mat apply_rows(const Mat& X) const {
    return (X.rowwise() - offset.transpose())
        .array()
        .rowwise() /
        scale.transpose().array();
  }
};

/// Standardization of a model's target column; zero variance degrades to
/// scale 1 so constant targets round-trip exactly.
struct TargetScaling {
  Real mean = 0;
  Real std = 1;

  static TargetScaling fit(const Vec& y) {
    TargetScaling s;
    s.mean = y.mean();
    const Real var = (y.array() - s.mean).square().mean();
    s.std = var > 0 ? std::sqrt(var) : 1.0;
    return s;
  }

  Vec standardize(const Vec& y) const { return (y.array() - mean) / std; }
  Real destandardize_center(Real v) const { return mean + std * v; }
  Real destandardize_spread(Real v) const { return std * v; }
};

}  // namespace offmoo
