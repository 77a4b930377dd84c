#pragma once

#include "zeekml/ml/tree.hpp"

#include <vector>

namespace zeekml::eval {

struct CorrelationMatrix {
    std::vector<std::vector<double>> r; // symmetric, unit diagonal
    std::vector<int> constant_columns;  // flagged; 0 against everything
};

// Pearson coefficient for every column pair. Constant columns correlate 0
// with everything and 1 with themselves by convention. Throws TooFewRows
// below two rows.
CorrelationMatrix pearson_matrix(const ml::Matrix& x);

double pearson(std::span<const double> a, std::span<const double> b);

} // namespace zeekml::eval
