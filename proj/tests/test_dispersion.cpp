#include <doctest.h>

#include <vector>

#include "gapcluster/dispersion.hpp"
#include "gapcluster/errors.hpp"
#include "gapcluster/metric.hpp"
#include "gapcluster/rng.hpp"

#include "oracles.hpp"

using namespace gapcluster;

namespace {

DistanceMatrix equal_distance_matrix(std::size_t n, double dist) {
    DistanceMatrix dm(n, Metric::squared_euclidean);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dm(i, j) = i == j ? 0.0 : dist;
    return dm;
}

Partition make_partition(int k, std::vector<int> labels) {
    Partition part;
    part.k = k;
    part.labels = std::move(labels);
    return part;
}

} // namespace

TEST_CASE("cluster_pair_sum counts ordered pairs") {
    const Dataset pair(2, 2, {0, 0, 2, 0});
    const DistanceMatrix dm = pairwise_matrix(pair);
    const Partition one = make_partition(1, {0, 0});
    CHECK(cluster_pair_sum(one, dm, 0) == 8.0); // 4 in both orders

    const Partition split = make_partition(2, {0, 1});
    CHECK(cluster_pair_sum(split, dm, 0) == 0.0); // singleton
    CHECK_THROWS_AS(cluster_pair_sum(split, dm, 2), IndexOutOfRange);

    const DistanceMatrix tri = equal_distance_matrix(3, 1.0);
    CHECK(cluster_pair_sum(make_partition(1, {0, 0, 0}), tri, 0) == 6.0);
}

TEST_CASE("pooled dispersion equals the centroid sum of squares") {
    const Dataset pair(2, 2, {0, 0, 2, 0});
    const Partition one = make_partition(1, {0, 0});
    const double w = pooled_dispersion(one, pairwise_matrix(pair));
    CHECK(w == 2.0); // 8 / (2 * 2); centroid (1,0) gives 1 + 1
    CHECK(w == oracles::centroid_ssq(pair, one));
}

TEST_CASE("all-singletons partitions have zero dispersion") {
    const Dataset data(3, 1, {0, 1, 5});
    const DistanceMatrix dm = pairwise_matrix(data);
    const Partition singles = make_partition(3, {0, 1, 2});
    CHECK(pooled_dispersion(singles, dm) == 0.0);
    CHECK(weighted_dispersion(singles, dm) == 0.0);
}

TEST_CASE("four equidistant points at k = 1 match the equal-distance model") {
    const DistanceMatrix dm = equal_distance_matrix(4, 1.0);
    const Partition one = make_partition(1, {0, 0, 0, 0});
    CHECK(pooled_dispersion(one, dm) == doctest::Approx(1.5)); // 12 / 8 = (4/2 - 1/2) * 1
}

TEST_CASE("weighted dispersion examples") {
    const Dataset pair(2, 1, {0, 2});
    const DistanceMatrix dm = pairwise_matrix(pair);
    CHECK(weighted_dispersion(make_partition(1, {0, 0}), dm) == 8.0); // 2*8/(2*1)

    // two clusters, each a pair at squared distance 4: contributions add
    const Dataset two_pairs(4, 1, {0, 2, 10, 12});
    const DistanceMatrix dm4 = pairwise_matrix(two_pairs);
    CHECK(weighted_dispersion(make_partition(2, {0, 0, 1, 1}), dm4) == 16.0);
}

TEST_CASE("dispersion curve of 1D {0,1,5}") {
    const Dataset data(3, 1, {0, 1, 5});
    const DistanceMatrix dm = pairwise_matrix(data);
    const MergeTree tree = average_linkage(dm);
    const DispersionCurve curve = dispersion_curve(dm, tree, 2, DispersionVariant::pooled);
    CHECK(curve.at_k(1) == doctest::Approx(14.0)); // 2(1+25+16) / 6
    CHECK(curve.at_k(2) == doctest::Approx(0.5));  // {0,1},{5}: 2/4
}

TEST_CASE("full curve on distinct points is positive and nonincreasing") {
    RngStream stream(21);
    const Dataset data = oracles::random_dataset(15, 2, stream);
    const DistanceMatrix dm = pairwise_matrix(data);
    const MergeTree tree = average_linkage(dm);
    const DispersionCurve curve = dispersion_curve(dm, tree, 14, DispersionVariant::pooled);
    for (int k = 1; k <= 14; ++k) CHECK(curve.at_k(k) > 0.0);
    for (int k = 1; k < 14; ++k) CHECK(curve.at_k(k + 1) <= curve.at_k(k) + 1e-9 * curve.at_k(1));
}

TEST_CASE("identical points raise DegenerateDispersion") {
    const Dataset data(4, 1, {2, 2, 2, 2});
    const DistanceMatrix dm = pairwise_matrix(data);
    const MergeTree tree = average_linkage(dm);
    CHECK_THROWS_AS(dispersion_curve(dm, tree, 2, DispersionVariant::pooled),
                    DegenerateDispersion);
}

TEST_CASE("k_max bounds") {
    const Dataset data(3, 1, {0, 1, 5});
    const DistanceMatrix dm = pairwise_matrix(data);
    const MergeTree tree = average_linkage(dm);
    CHECK_THROWS_AS(dispersion_curve(dm, tree, 3, DispersionVariant::pooled), InvalidK);
    CHECK_THROWS_AS(dispersion_curve(dm, tree, 0, DispersionVariant::pooled), InvalidK);
}

TEST_CASE("pooled dispersion is monotone along dendrogram cuts") {
    RngStream stream(22);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 4 + (stream.next_u64() % 12);
        const std::size_t p = 1 + (stream.next_u64() % 3);
        const Dataset data = oracles::random_dataset(n, p, stream, -5.0, 5.0);
        const DistanceMatrix dm = pairwise_matrix(data);
        const MergeTree tree = average_linkage(dm);
        const DispersionCurve curve =
            dispersion_curve(dm, tree, static_cast<int>(n) - 1, DispersionVariant::pooled);
        for (int k = 1; k < curve.k_max(); ++k)
            CHECK(curve.at_k(k + 1) <= curve.at_k(k) + 1e-9 * curve.at_k(1));
    }
}

TEST_CASE("pooled dispersion matches the centroid oracle on random data") {
    RngStream stream(23);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 5 + (stream.next_u64() % 20);
        const Dataset data = oracles::random_dataset(n, 3, stream, -10.0, 10.0);
        const DistanceMatrix dm = pairwise_matrix(data);
        const MergeTree tree = average_linkage(dm);
        for (int k : {1, 2, 3}) {
            const Partition part = cut_tree(tree, k);
            const double w = pooled_dispersion(part, dm);
            CHECK(w == doctest::Approx(oracles::centroid_ssq(data, part)).epsilon(1e-10));
        }
    }
}

TEST_CASE("weighted dispersion is nonnegative but not monotone") {
    RngStream stream(24);
    const Dataset data = oracles::random_dataset(20, 2, stream);
    const DistanceMatrix dm = pairwise_matrix(data);
    const MergeTree tree = average_linkage(dm);
    const DispersionCurve curve = dispersion_curve(dm, tree, 19, DispersionVariant::weighted);
    for (int k = 1; k <= 19; ++k) CHECK(curve.at_k(k) >= 0.0);
}

TEST_CASE("dispersion scales with the square of the data scale") {
    RngStream stream(25);
    const Dataset data = oracles::random_dataset(12, 2, stream, -3.0, 3.0);
    std::vector<double> scaled(data.values());
    const double c = 7.25; // exactly representable
    for (double& v : scaled) v *= c;
    const Dataset data_c(12, 2, scaled);

    const DistanceMatrix dm = pairwise_matrix(data);
    const DistanceMatrix dm_c = pairwise_matrix(data_c);
    const MergeTree tree = average_linkage(dm);
    for (int k : {1, 3, 6}) {
        const Partition part = cut_tree(tree, k);
        CHECK(pooled_dispersion(part, dm_c)
              == doctest::Approx(c * c * pooled_dispersion(part, dm)).epsilon(1e-12));
        CHECK(weighted_dispersion(part, dm_c)
              == doctest::Approx(c * c * weighted_dispersion(part, dm)).epsilon(1e-12));
    }
}
