#include "gapcluster/dispersion.hpp"

#include <vector>

#include "gapcluster/errors.hpp"

namespace gapcluster {

namespace {

std::vector<std::vector<int>> members_by_cluster(const Partition& part) {
    std::vector<std::vector<int>> members(part.k);
    for (std::size_t i = 0; i < part.labels.size(); ++i)
        members[part.labels[i]].push_back(static_cast<int>(i));
    return members;
}

// Ordered-pair sum of d over one member list: twice the sum over i < j.
double pair_sum(const std::vector<int>& members, const DistanceMatrix& dm) {
    double sum = 0.0;
    for (std::size_t u = 0; u < members.size(); ++u) {
        const auto row = dm.row(members[u]);
        for (std::size_t v = u + 1; v < members.size(); ++v) sum += row[members[v]];
    }
    return 2.0 * sum;
}

} // namespace

std::string to_string(DispersionVariant variant) {
    return variant == DispersionVariant::pooled ? "pooled" : "weighted";
}

double cluster_pair_sum(const Partition& part, const DistanceMatrix& dm, int r) {
    if (r < 0 || r >= part.k)
        throw IndexOutOfRange("cluster index " + std::to_string(r) + " outside [0, "
                              + std::to_string(part.k) + ")");
    std::vector<int> members;
    for (std::size_t i = 0; i < part.labels.size(); ++i)
        if (part.labels[i] == r) members.push_back(static_cast<int>(i));
    return pair_sum(members, dm);
}

double pooled_dispersion(const Partition& part, const DistanceMatrix& dm) {
    double w = 0.0;
    for (const auto& members : members_by_cluster(part))
        w += pair_sum(members, dm) / (2.0 * static_cast<double>(members.size()));
    return w;
}

double weighted_dispersion(const Partition& part, const DistanceMatrix& dm) {
    double w = 0.0;
    for (const auto& members : members_by_cluster(part)) {
        const double nr = static_cast<double>(members.size());
        if (members.size() < 2) continue; // singleton: average over zero pairs is 0
        w += 2.0 * pair_sum(members, dm) / (nr * (nr - 1.0));
    }
    return w;
}

DispersionCurve dispersion_curve(const DistanceMatrix& dm, const MergeTree& tree,
                                 int k_max, DispersionVariant variant) {
    const int n = tree.n_leaves;
    if (k_max < 1 || k_max >= n)
        throw InvalidK("k_max = " + std::to_string(k_max) + " outside [1, " + std::to_string(n)
                       + ")");

    DispersionCurve curve;
    curve.variant = variant;
    curve.w.resize(k_max);
    for (int k = 1; k <= k_max; ++k) {
        const Partition part = cut_tree(tree, k);
        const double w = variant == DispersionVariant::pooled ? pooled_dispersion(part, dm)
                                                              : weighted_dispersion(part, dm);
        if (variant == DispersionVariant::pooled && w == 0.0)
            throw DegenerateDispersion("pooled W_" + std::to_string(k)
                                       + " is zero (duplicate-point data)");
        curve.w[k - 1] = w;
    }
    return curve;
}

} // namespace gapcluster
