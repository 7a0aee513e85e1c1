#pragma once

#include <string>
#include <vector>

#include "offmoo/types.hpp"

namespace offmoo {

/// Names of every problem in the catalog, in listing order.
std::vector<std::string> catalog_names();

/// Builds a fresh Problem with its default dimensions and bounds.
/// Throws std::invalid_argument listing the valid names when `name` is
/// unknown.
Problem catalog_lookup(const std::string& name);

/// Evaluates the true objectives and constraint violations at x.
/// Throws std::invalid_argument when x is out of bounds or has the wrong
/// length.
Evaluation evaluate_true(const Problem& problem, const DecisionVector& x);

}  // namespace offmoo
