#pragma once

#include <vector>

#include "offmoo/types.hpp"

namespace offmoo {

/// Exact dominated area of a 2-objective front against `ref`
/// (minimization). Points not strictly below ref in both coordinates and
/// dominated points contribute nothing. Throws on K != 2.
Real hypervolume_2d(const std::vector<ObjectiveVector>& front, const Vec& ref);

/// Mean of squared entry differences over two equally shaped matrices.
Real mse(const Mat& a, const Mat& b);

/// Per-problem hypervolume reference point and where it came from. Front
/// points only count toward HV strictly below the reference in every
/// coordinate.
struct HVConfig {
  Vec reference;
  enum class Source { configured, derived } source = Source::derived;
};

struct ReferencePoint {
  Vec value;
  bool degenerate = false;  // some coordinate has zero extent beyond the max
};

/// Componentwise maximum over the dataset objectives and any extra front
/// points, pushed outward by 10% of its magnitude: ref_k = max_k +
/// 0.1*|max_k|. Throws when there is no sample at all.
ReferencePoint derive_reference_point(
    const Mat& dataset_objectives,
    const std::vector<ObjectiveVector>& front_points);

}  // namespace offmoo
