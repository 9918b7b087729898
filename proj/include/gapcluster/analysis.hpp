#pragma once

#include <vector>

#include "gapcluster/dispersion.hpp"
#include "gapcluster/gapstat.hpp"
#include "gapcluster/linkage.hpp"
#include "gapcluster/metric.hpp"
#include "gapcluster/rng.hpp"

namespace gapcluster {

/// Rectangle side lengths; operations order a >= b internally.
struct RectSpec {
    double a = 1.0;
    double b = 1.0;
};

/// Closed-form expected Euclidean distance between two points drawn uniformly
/// from an a x b rectangle (Santalo). Natural logarithms.
double expected_rect_distance(const RectSpec& rect);

/// Two 2D normal clusters N((0,0), sigma^2 I) and N((delta,0), sigma^2 I) with
/// size ratio m = N1/N2 >= 1; d_avg is the average inter-cluster distance
/// (always supplied by the caller; there is no single natural
/// normalization to derive it from).
struct UnequalSizeScenario {
    double sigma = 1.0;
    double delta = 5.0;
    int n_total = 2;
    double m = 1.0;
    double d_avg = 0.0;
};

struct FeasibilityResult {
    bool holds_at_m = false;         // at the scenario's own m
    int max_m = 0;                   // largest integer m in 1..64 that holds; 0 if none
    std::vector<bool> holds_table;   // index i -> m = i+1, for m = 1..64
};

/// Tests whether a size ratio still lets the Gap rule prefer k = 2.
/// Log scale:    m*d_avg/(sigma*(m+1)^2) >= E(d1)/E(d2) - 1
/// Direct scale: 2m*d_avg/(m+1)^2        >= E(d1) - E(d2)
/// with E(d1), E(d2) the expected rectangle distances for sides
/// (6*sigma+delta) x 6*sigma and (6*sigma+delta)/2 x 6*sigma.
FeasibilityResult feasible_ratio(const UnequalSizeScenario& scenario, GapScale scale);

/// W_k when every pairwise distance equals `dist` and the partition has k
/// clusters: (n/2 - k/2) * dist.
double equal_distance_wk(int n, int k, double dist);

/// Relative spread (max - min)/min of the off-diagonal entries; 0 when all
/// pairs are equal (including n = 2).
double spread_ratio(const DistanceMatrix& dm);

/// Samples n points from U[0,1]^p and returns the spread ratio of their
/// pairwise squared distances. Shrinks toward 0 as p grows.
double distance_concentration(int p, int n, RngStream& stream);

struct W1Decomposition {
    double w1 = 0.0;         // pooled dispersion at k = 1
    double w2 = 0.0;         // pooled dispersion of the supplied 2-partition
    double d_avg = 0.0;      // mean distance over cross-cluster pairs
    double cross_term = 0.0; // 2 N1 N2 d_avg / n
    double residual = 0.0;   // w1 - w2 - cross_term; not exactly zero in general
};

/// Reports how much of W_1 the inter-cluster term 2 N1 N2 d/n accounts for.
/// The identity W_1 = W_2 + 2 N1 N2 d/n is approximate (the within-cluster
/// denominators differ between W_1 and W_2), so the residual is reported, not
/// asserted away.
W1Decomposition w1_decomposition(const Partition& part, const DistanceMatrix& dm);

} // namespace gapcluster
