#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nij/scalar.hpp"

namespace nij {

// Renders sum c_k * label_k, e.g. "n21 e1 + (n11 + n21) e2" or "- e2* (x) e1".
// Coefficients print so that the text parses back to the same value.
std::string format_linear_combination(const std::vector<std::pair<Scalar, std::string>>& terms);

}  // namespace nij
