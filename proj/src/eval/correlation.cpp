#include "zeekml/eval/correlation.hpp"

#include "zeekml/errors.hpp"

#include <cmath>

namespace zeekml::eval {

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("pearson: length mismatch");
    if (a.size() < 2)
        throw TooFewRows("pearson needs at least two observations");
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double da = a[i] - mean_a;
        double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        return 0.0;
    double r = cov / std::sqrt(var_a * var_b);
    return std::clamp(r, -1.0, 1.0);
}

CorrelationMatrix pearson_matrix(const ml::Matrix& x) {
    if (x.size() < 2)
        throw TooFewRows("pearson_matrix needs at least two rows");
    const std::size_t dim = x.front().size();

    std::vector<std::vector<double>> columns(dim, std::vector<double>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
            columns[j][i] = x[i][j];

    CorrelationMatrix out;
    out.r.assign(dim, std::vector<double>(dim, 0.0));
    std::vector<bool> constant(dim, false);
    for (std::size_t j = 0; j < dim; ++j) {
        constant[j] = std::all_of(columns[j].begin(), columns[j].end(),
                                  [&](double v) { return v == columns[j][0]; });
        if (constant[j])
            out.constant_columns.push_back(static_cast<int>(j));
    }

    for (std::size_t i = 0; i < dim; ++i) {
        out.r[i][i] = 1.0;
        for (std::size_t j = i + 1; j < dim; ++j) {
            double r = (constant[i] || constant[j]) ? 0.0 : pearson(columns[i], columns[j]);
            out.r[i][j] = r;
            out.r[j][i] = r;
        }
    }
    return out;
}

} // namespace zeekml::eval
