#include "gapcluster/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapcluster/dataset.hpp"
#include "gapcluster/errors.hpp"

namespace gapcluster {

double expected_rect_distance(const RectSpec& rect) {
    if (!(rect.a > 0.0) || !(rect.b > 0.0) || !std::isfinite(rect.a) || !std::isfinite(rect.b))
        throw NonPositiveSide("rectangle sides must be positive and finite");
    const double a = std::max(rect.a, rect.b);
    const double b = std::min(rect.a, rect.b);
    const double d = std::sqrt(a * a + b * b);
    const double a2 = a * a, b2 = b * b;
    return (a2 * a / b2 + b2 * b / a2 + d * (3.0 - a2 / b2 - b2 / a2)
            + 2.5 * (b2 / a * std::log((a + d) / b) + a2 / b * std::log((b + d) / a)))
           / 15.0;
}

FeasibilityResult feasible_ratio(const UnequalSizeScenario& scenario, GapScale scale) {
    if (!(scenario.sigma > 0.0) || scenario.delta < 0.0 || scenario.d_avg < 0.0
        || scenario.m < 1.0 || scenario.n_total < 2)
        throw InvalidScenario("need sigma > 0, delta >= 0, d_avg >= 0, m >= 1, n >= 2");

    const double long_side = 6.0 * scenario.sigma + scenario.delta;
    const double short_side = 6.0 * scenario.sigma;
    const double e1 = expected_rect_distance({long_side, short_side});
    const double e2 = expected_rect_distance({long_side / 2.0, short_side});

    const auto holds = [&](double m) {
        if (scale == GapScale::log_scale)
            return m * scenario.d_avg / (scenario.sigma * (m + 1.0) * (m + 1.0)) >= e1 / e2 - 1.0;
        return 2.0 * m * scenario.d_avg / ((m + 1.0) * (m + 1.0)) >= e1 - e2;
    };

    FeasibilityResult result;
    result.holds_at_m = holds(scenario.m);
    result.holds_table.resize(64);
    for (int m = 1; m <= 64; ++m) {
        result.holds_table[m - 1] = holds(static_cast<double>(m));
        if (result.holds_table[m - 1]) result.max_m = m;
    }
    return result;
}

double equal_distance_wk(int n, int k, double dist) {
    if (k < 1 || k > n)
        throw InvalidK("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    if (dist < 0.0) throw InvalidScenario("dist must be nonnegative");
    return (n / 2.0 - k / 2.0) * dist;
}

double spread_ratio(const DistanceMatrix& dm) {
    const std::size_t n = dm.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dm(i, j);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
    if (hi == lo) return 0.0;
    return (hi - lo) / lo;
}

double distance_concentration(int p, int n, RngStream& stream) {
    if (n < 2 || p < 1) throw InvalidConfig("need n >= 2 and p >= 1");
    std::vector<double> values(static_cast<std::size_t>(n) * p);
    for (double& v : values) v = stream.uniform01();
    const Dataset sample(n, p, std::move(values));
    return spread_ratio(pairwise_matrix(sample, Metric::squared_euclidean));
}

W1Decomposition w1_decomposition(const Partition& part, const DistanceMatrix& dm) {
    if (part.k != 2) throw NotTwoClusters("w1_decomposition expects exactly two clusters");

    const std::size_t n = part.labels.size();
    W1Decomposition out;

    Partition whole;
    whole.k = 1;
    whole.labels.assign(n, 0);
    out.w1 = pooled_dispersion(whole, dm);
    out.w2 = pooled_dispersion(part, dm);

    double cross_sum = 0.0;
    std::size_t n1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (part.labels[i] == 0) ++n1;
        for (std::size_t j = i + 1; j < n; ++j)
            if (part.labels[i] != part.labels[j]) cross_sum += dm(i, j);
    }
    const std::size_t n2 = n - n1;
    out.d_avg = cross_sum / (static_cast<double>(n1) * static_cast<double>(n2));
    out.cross_term = 2.0 * static_cast<double>(n1) * static_cast<double>(n2) * out.d_avg
                     / static_cast<double>(n);
    out.residual = out.w1 - out.w2 - out.cross_term;
    return out;
}

} // namespace gapcluster
