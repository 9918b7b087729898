#include "gapcluster/metric.hpp"

#include <cmath>

#include "gapcluster/errors.hpp"

namespace gapcluster {

Metric metric_from_string(const std::string& name) {
    if (name == "sqeuclidean" || name == "squared-euclidean") return Metric::squared_euclidean;
    if (name == "euclidean") return Metric::euclidean;
    throw UnsupportedMetric("unsupported metric '" + name + "'");
}

std::string to_string(Metric metric) {
    switch (metric) {
    case Metric::squared_euclidean: return "sqeuclidean";
    case Metric::euclidean: return "euclidean";
    }
    throw UnsupportedMetric("unknown metric tag");
}

double squared_euclidean(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw DimensionMismatch("vector lengths differ: " + std::to_string(x.size()) + " vs "
                                + std::to_string(y.size()));
    double sum = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double diff = x[j] - y[j];
        sum += diff * diff;
    }
    return sum;
}

DistanceMatrix pairwise_matrix(const Dataset& data, Metric metric) {
    const std::size_t n = data.rows();
    DistanceMatrix dm(n, metric);
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = data.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = squared_euclidean(xi, data.row(j));
            if (metric == Metric::euclidean) d = std::sqrt(d);
            dm(i, j) = d;
            dm(j, i) = d;
        }
    }
    return dm;
}

} // namespace gapcluster
