#include "offmoo/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "offmoo/dominance.hpp"

namespace offmoo {

Real hypervolume_2d(const std::vector<ObjectiveVector>& front, const Vec& ref) {
  if (ref.size() != 2) {
    throw std::invalid_argument("hypervolume_2d: only 2 objectives supported");
  }
  std::vector<ObjectiveVector> pts;
  pts.reserve(front.size());
  for (const auto& p : front) {
    if (p.size() != 2) {
      throw std::invalid_argument("hypervolume_2d: front point is not 2-d");
    }
    if (p[0] < ref[0] && p[1] < ref[1]) pts.push_back(p);
  }
  // Reduce to the non-dominated subset.
  std::vector<ObjectiveVector> nd;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
      if (j != i && dominates(pts[j], pts[i])) dominated = true;
    }
    // Keep a single copy of exact duplicates.
    for (std::size_t j = 0; j < i && !dominated; ++j) {
      if (pts[j] == pts[i]) dominated = true;
    }
    if (!dominated) nd.push_back(pts[i]);
  }
  std::sort(nd.begin(), nd.end(),
            [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
  // Left-to-right sweep of rectangles against the reference corner.
  Real hv = 0;
  for (std::size_t i = 0; i < nd.size(); ++i) {
    const Real next_f1 = i + 1 < nd.size() ? nd[i + 1][0] : ref[0];
    hv += (next_f1 - nd[i][0]) * (ref[1] - nd[i][1]);
  }
  return hv;
}

Real mse(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("mse: shape mismatch");
  }
  if (a.rows() < 1) throw std::invalid_argument("mse: empty input");
  return (a - b).array().square().mean();
}

ReferencePoint derive_reference_point(
    const Mat& dataset_objectives,
    const std::vector<ObjectiveVector>& front_points) {
  if (dataset_objectives.rows() == 0 && front_points.empty()) {
    throw std::invalid_argument("derive_reference_point: no samples");
  }
  Eigen::Index k = dataset_objectives.rows() > 0
                       ? dataset_objectives.cols()
                       : front_points.front().size();
  Vec max_vals = Vec::Constant(k, -std::numeric_limits<Real>::infinity());
  if (dataset_objectives.rows() > 0) {
    max_vals = dataset_objectives.colwise().maxCoeff();
  }
  for (const auto& p : front_points) {
    if (p.size() != k) {
      throw std::invalid_argument("derive_reference_point: shape mismatch");
    }
    max_vals = max_vals.cwiseMax(p);
  }
  ReferencePoint rp;
  rp.value = max_vals + 0.1 * max_vals.cwiseAbs();
  rp.degenerate = (max_vals.array() == rp.value.array()).any();
  return rp;
}

}  // namespace offmoo
