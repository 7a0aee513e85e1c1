#pragma once

#include <json.hpp>

#include "offmoo/num_format.hpp"
#include "offmoo/types.hpp"

namespace offmoo {

/// Numbers are persisted as shortest-round-trip decimal strings so a
/// save/load cycle reproduces the exact binary64 values.
inline nlohmann::json vec_to_json(const Vec& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(format_real(v[i]));
  return arr;
}

inline Vec vec_from_json(const nlohmann::json& arr) {
  Vec v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = parse_real(arr[i].get<std::string>());
  }
  return v;
}

inline nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    rows.push_back(vec_to_json(m.row(i).transpose()));
  }
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

inline Mat mat_from_json(const nlohmann::json& doc) {
  const auto rows = doc.at("rows").get<Eigen::Index>();
  const auto cols = doc.at("cols").get<Eigen::Index>();
  Mat m(rows, cols);
  const auto& data = doc.at("data");
  for (Eigen::Index i = 0; i < rows; ++i) {
    m.row(i) = vec_from_json(data[static_cast<std::size_t>(i)]).transpose();
  }
  return m;
}

inline nlohmann::json real_to_json(Real v) { return format_real(v); }

inline Real real_from_json(const nlohmann::json& doc) {
  return parse_real(doc.get<std::string>());
}

}  // namespace offmoo
