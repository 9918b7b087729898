#pragma once

#include <string>
#include <vector>

#include "gapcluster/linkage.hpp"
#include "gapcluster/metric.hpp"

namespace gapcluster {

enum class DispersionVariant {
    pooled,   // W_k  = sum_r D_r / (2 n_r)
    weighted, // W'_k = sum_r 2 D_r / (n_r (n_r - 1)), singletons contribute 0
};

std::string to_string(DispersionVariant variant);

/// D_r: sum of d_ii' over ordered pairs of members of cluster r (each
/// unordered pair counted twice, diagonal zero).
double cluster_pair_sum(const Partition& part, const DistanceMatrix& dm, int r);

/// Pooled within-cluster dispersion. With squared Euclidean distances this
/// equals the within-cluster sum of squared deviations from cluster centroids.
double pooled_dispersion(const Partition& part, const DistanceMatrix& dm);

/// Size-weighted variant: per-cluster average of all pairwise distances.
/// Not monotone in k.
double weighted_dispersion(const Partition& part, const DistanceMatrix& dm);

/// w[k-1] = dispersion of cut_tree(tree, k), k = 1..k_max.
struct DispersionCurve {
    DispersionVariant variant = DispersionVariant::pooled;
    std::vector<double> w;

    int k_max() const { return static_cast<int>(w.size()); }
    double at_k(int k) const { return w[static_cast<std::size_t>(k) - 1]; }
};

/// Evaluates the dispersion of every dendrogram cut k = 1..k_max. Requires
/// 1 <= k_max < n. Throws DegenerateDispersion if a pooled value is exactly
/// zero (duplicate-point data), since log(W_k) would be undefined downstream.
DispersionCurve dispersion_curve(const DistanceMatrix& dm, const MergeTree& tree,
                                 int k_max, DispersionVariant variant);

} // namespace gapcluster
