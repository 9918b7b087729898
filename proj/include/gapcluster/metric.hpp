#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gapcluster/dataset.hpp"

namespace gapcluster {

enum class Metric {
    squared_euclidean, // default; makes pooled dispersion the centroid SSQ
    euclidean,
};

Metric metric_from_string(const std::string& name);
std::string to_string(Metric metric);

/// Symmetric n x n dissimilarity matrix with zero diagonal. Stored dense,
/// row-major; each unordered pair is evaluated once and mirrored, so symmetry
/// is exact.
class DistanceMatrix {
public:
    DistanceMatrix(std::size_t n, Metric metric_tag)
        : n_(n), metric_tag_(metric_tag), d_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    Metric metric_tag() const { return metric_tag_; }

    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }

private:
    std::size_t n_;
    Metric metric_tag_;
    std::vector<double> d_;
};

/// sum_j (x_j - y_j)^2
double squared_euclidean(std::span<const double> x, std::span<const double> y);

DistanceMatrix pairwise_matrix(const Dataset& data, Metric metric = Metric::squared_euclidean);

} // namespace gapcluster
