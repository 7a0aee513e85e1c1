#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "offmoo/types.hpp"

namespace offmoo {

struct SamplingConfig {
  int n_samples = 0;  // <= 0 means the 11*D - 1 default
  std::uint64_t seed = 42;
};

/// Latin hypercube sample: n rows, one per stratum and dimension, with
/// uniform jitter inside each stratum and an independent stratum
/// permutation per dimension. Deterministic in the seed.
Mat lhs(int n, const Vec& lower, const Vec& upper, std::uint64_t seed);

/// Builds the fixed offline dataset: X by LHS, Y by the true evaluator.
OfflineDataset build_offline_dataset(const Problem& problem,
                                     const SamplingConfig& cfg);

/// CSV with header row x_1..x_D,f_1..f_K.
void write_dataset_csv(const OfflineDataset& dataset, std::ostream& out);
OfflineDataset read_dataset_csv(std::istream& in,
                                DatasetProvenance provenance = {});

}  // namespace offmoo
