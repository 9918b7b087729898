#pragma once

#include <cstddef>
#include <vector>

#include "gapcluster/metric.hpp"

namespace gapcluster {

/// One agglomerative merge. Node ids: leaves 0..n-1, the t-th merge creates
/// internal node n+t. `height` is the group-average dissimilarity of the two
/// children at the moment of merging.
struct Merge {
    int left;
    int right;
    double height;
    int size; // cardinality of the merged cluster
};

/// Full merge history of an agglomeration: exactly n-1 merges.
struct MergeTree {
    int n_leaves = 0;
    std::vector<Merge> merges;
};

/// Flat clustering: labels[i] in 0..k-1, every label occupied. Labels are
/// canonical: cluster 0 contains row 0, and labels increase with the smallest
/// member index of each cluster.
struct Partition {
    int k = 0;
    std::vector<int> labels;

    std::size_t size() const { return labels.size(); }
};

/// Group-average agglomeration: repeatedly merges the pair of clusters G, H
/// minimizing d(G,H) = (1/(N_G N_H)) sum_{i in G, i' in H} d_ii'. Inter-cluster
/// averages are maintained with the exact weighted-average update
/// d(G u H, K) = (N_G d(G,K) + N_H d(H,K)) / (N_G + N_H).
///
/// Tie rule: pairs within absolute 1e-12 of the step minimum are tied; among
/// tied pairs the one whose smaller member index is lowest wins, then the one
/// whose larger member index is lowest.
MergeTree average_linkage(const DistanceMatrix& dm);

/// Undoes the last k-1 merges; connected components become the clusters.
Partition cut_tree(const MergeTree& tree, int k);

} // namespace gapcluster
