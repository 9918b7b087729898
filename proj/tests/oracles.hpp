#pragma once

// Independent test-side oracles. These deliberately avoid the library's
// computation paths: dispersion is cross-checked against centroids, the
// closed-form rectangle distance against plain Monte Carlo, reference
// dispersions against a direct evaluation of the defining sums.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gapcluster/dataset.hpp"
#include "gapcluster/linkage.hpp"
#include "gapcluster/rng.hpp"

namespace oracles {

/// Within-cluster sum of squared deviations from cluster centroids.
inline double centroid_ssq(const gapcluster::Dataset& data, const gapcluster::Partition& part) {
    const std::size_t p = data.cols();
    std::vector<std::vector<double>> centroids(part.k, std::vector<double>(p, 0.0));
    std::vector<int> counts(part.k, 0);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const int r = part.labels[i];
        ++counts[r];
        for (std::size_t j = 0; j < p; ++j) centroids[r][j] += data.at(i, j);
    }
    for (int r = 0; r < part.k; ++r)
        for (std::size_t j = 0; j < p; ++j) centroids[r][j] /= counts[r];

    double ssq = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const int r = part.labels[i];
        for (std::size_t j = 0; j < p; ++j) {
            const double diff = data.at(i, j) - centroids[r][j];
            ssq += diff * diff;
        }
    }
    return ssq;
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Mean Euclidean distance of point pairs drawn uniformly from an a x b
/// rectangle.
inline MonteCarloEstimate mc_rect_distance(double a, double b, int pairs, std::uint64_t seed) {
    gapcluster::RngStream stream(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const double dx = stream.uniform(0.0, a) - stream.uniform(0.0, a);
        const double dy = stream.uniform(0.0, b) - stream.uniform(0.0, b);
        const double d = std::sqrt(dx * dx + dy * dy);
        sum += d;
        sum_sq += d * d;
    }
    MonteCarloEstimate est;
    est.mean = sum / pairs;
    const double var = (sum_sq / pairs - est.mean * est.mean) / (pairs - 1.0);
    est.standard_error = std::sqrt(var);
    return est;
}

/// Random dataset with entries uniform on [lo, hi].
inline gapcluster::Dataset random_dataset(std::size_t n, std::size_t p, gapcluster::RngStream& stream,
                                          double lo = 0.0, double hi = 1.0) {
    std::vector<double> values(n * p);
    for (double& v : values) v = stream.uniform(lo, hi);
    return {n, p, std::move(values)};
}

} // namespace oracles
