#include "offmoo/sampling.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "offmoo/num_format.hpp"
#include "offmoo/rng.hpp"

namespace offmoo {

Mat lhs(int n, const Vec& lower, const Vec& upper, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("lhs: n must be >= 1");
  const auto dim = lower.size();
  if (upper.size() != dim) throw std::invalid_argument("lhs: bounds mismatch");

  Rng rng(seed);
  Mat samples(n, dim);
  for (Eigen::Index d = 0; d < dim; ++d) {
    const std::vector<int> strata = rng.permutation(n);
    const Real width = (upper[d] - lower[d]) / static_cast<Real>(n);
    for (int i = 0; i < n; ++i) {
      const Real jitter = rng.uniform01();
      samples(i, d) =
          lower[d] + (static_cast<Real>(strata[static_cast<std::size_t>(i)]) +
                      jitter) *
                         width;
    }
  }
  return samples;
}

OfflineDataset build_offline_dataset(const Problem& problem,
                                     const SamplingConfig& cfg) {
  const int n = cfg.n_samples > 0 ? cfg.n_samples : 11 * problem.dim - 1;
  OfflineDataset dataset;
  dataset.X = lhs(n, problem.lower, problem.upper, cfg.seed);
  dataset.Y.resize(n, problem.n_objectives);
  for (int i = 0; i < n; ++i) {
    dataset.Y.row(i) = problem.evaluate_true(dataset.X.row(i)).objectives;
  }
  dataset.provenance = {problem.name, cfg.seed, n};
  return dataset;
}

void write_dataset_csv(const OfflineDataset& dataset, std::ostream& out) {
  for (Eigen::Index d = 0; d < dataset.X.cols(); ++d) {
    out << "x_" << d + 1 << ',';
  }
  for (Eigen::Index k = 0; k < dataset.Y.cols(); ++k) {
    out << "f_" << k + 1 << (k + 1 < dataset.Y.cols() ? ',' : '\n');
  }
  for (Eigen::Index i = 0; i < dataset.X.rows(); ++i) {
    for (Eigen::Index d = 0; d < dataset.X.cols(); ++d) {
      out << format_real(dataset.X(i, d)) << ',';
    }
    for (Eigen::Index k = 0; k < dataset.Y.cols(); ++k) {
      out << format_real(dataset.Y(i, k))
          << (k + 1 < dataset.Y.cols() ? ',' : '\n');
    }
  }
}

OfflineDataset read_dataset_csv(std::istream& in,
                                DatasetProvenance provenance) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("read_dataset_csv: empty input");
  }
  int d = 0, k = 0;
  {
    std::istringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) {
      if (field.rfind("x_", 0) == 0) {
        ++d;
      } else if (field.rfind("f_", 0) == 0) {
        ++k;
      } else {
        throw std::invalid_argument("read_dataset_csv: bad header field '" +
                                    field + "'");
      }
    }
  }
  if (d == 0 || k == 0) {
    throw std::invalid_argument("read_dataset_csv: header must list x_* and f_* columns");
  }
  std::vector<Real> values;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    int count = 0;
    while (std::getline(row, field, ',')) {
      values.push_back(parse_real(field));
      ++count;
    }
    if (count != d + k) {
      throw std::invalid_argument("read_dataset_csv: row " +
                                  std::to_string(rows + 1) + " has " +
                                  std::to_string(count) + " fields, expected " +
                                  std::to_string(d + k));
    }
    ++rows;
  }
  OfflineDataset dataset;
  dataset.X.resize(rows, d);
  dataset.Y.resize(rows, k);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < d; ++j) {
      dataset.X(i, j) = values[static_cast<std::size_t>(i * (d + k) + j)];
    }
    for (int j = 0; j < k; ++j) {
      dataset.Y(i, j) = values[static_cast<std::size_t>(i * (d + k) + d + j)];
    }
  }
  provenance.n = rows;
  dataset.provenance = std::move(provenance);
  return dataset;
}

}  // namespace offmoo
