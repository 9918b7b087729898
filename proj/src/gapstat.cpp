#include "gapcluster/gapstat.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "gapcluster/errors.hpp"

namespace gapcluster {

namespace {

void validate(const GapConfig& config, std::size_t n) {
    if (config.k_max < 2) throw InvalidConfig("k_max must be >= 2");
    if (config.b < 2) throw InvalidConfig("b must be >= 2");
    if (static_cast<std::size_t>(config.k_max) >= n)
        throw InvalidConfig("k_max = " + std::to_string(config.k_max)
                            + " must be smaller than n = " + std::to_string(n));
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Index-partitioned parallel for. Any partition yields the same result
// because iterations are independent and write disjoint slots.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += threads) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

GapVariant gap_variant_from_string(const std::string& name) {
    if (name == "log-pooled") return {GapScale::log_scale, DispersionVariant::pooled};
    if (name == "direct-pooled") return {GapScale::direct, DispersionVariant::pooled};
    if (name == "log-weighted") return {GapScale::log_scale, DispersionVariant::weighted};
    if (name == "direct-weighted") return {GapScale::direct, DispersionVariant::weighted};
    throw InvalidConfig("unknown gap variant '" + name
                        + "' (expected log|direct - pooled|weighted)");
}

std::string to_string(const GapVariant& variant) {
    return std::string(variant.scale == GapScale::log_scale ? "log" : "direct") + "-"
           + to_string(variant.dispersion);
}

std::vector<double> ReferenceEnsemble::column(int k) const {
    std::vector<double> col(b_);
    for (int b = 0; b < b_; ++b) col[b] = at(b, k);
    return col;
}

Dataset sample_reference(const FeatureRanges& ranges, std::size_t n, RngStream& stream) {
    const std::size_t p = ranges.mins.size();
    std::vector<double> values(n * p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            values[i * p + j] = ranges.mins[j]
                                + stream.uniform01() * (ranges.maxs[j] - ranges.mins[j]);
    return Dataset(n, p, std::move(values));
}

ReferenceEnsemble reference_ensemble(const Dataset& data, const GapConfig& config) {
    validate(config, data.rows());
    const FeatureRanges ranges = feature_ranges(data);
    ReferenceEnsemble ensemble(config.b, config.k_max);

    parallel_for(config.b, resolve_threads(config.threads), [&](int b) {
        RngStream stream = derive_stream(config.seed, static_cast<std::uint64_t>(b));
        const Dataset reference = sample_reference(ranges, data.rows(), stream);
        const DistanceMatrix dm = pairwise_matrix(reference, config.metric);
        const MergeTree tree = average_linkage(dm);
        const DispersionCurve curve =
            dispersion_curve(dm, tree, config.k_max, config.variant.dispersion);
        for (int k = 1; k <= config.k_max; ++k) ensemble.at(b, k) = curve.at_k(k);
    });
    return ensemble;
}

double simulation_error(std::span<const double> column, GapScale scale, SdDivisor divisor) {
    const std::size_t b = column.size();
    if (b < 2) throw InvalidConfig("simulation error needs at least two replicates");

    std::vector<double> values(b);
    for (std::size_t i = 0; i < b; ++i) {
        if (scale == GapScale::log_scale) {
            if (column[i] <= 0.0)
                throw NonPositiveDispersion("log scale on non-positive reference dispersion");
            values[i] = std::log(column[i]);
        } else {
            values[i] = column[i];
        }
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(b);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double div =
        divisor == SdDivisor::population ? static_cast<double>(b) : static_cast<double>(b - 1);
    const double sd = std::sqrt(ss / div);
    return std::sqrt(1.0 + 1.0 / static_cast<double>(b)) * sd;
}

GapCurve gap_curve(const DispersionCurve& w, const ReferenceEnsemble& ensemble,
                   GapVariant variant, SdDivisor divisor) {
    if (w.k_max() != ensemble.k_max())
        throw InvalidConfig("dispersion curve and ensemble disagree on k_max");
    if (w.variant != variant.dispersion)
        throw InvalidConfig("dispersion curve variant does not match the gap variant");

    const int k_max = w.k_max();
    const bool log_scale = variant.scale == GapScale::log_scale;

    GapCurve curve;
    curve.variant = variant;
    curve.w = w.w;
    curve.e_star.resize(k_max);
    curve.gap.resize(k_max);
    curve.s.resize(k_max);

    for (int k = 1; k <= k_max; ++k) {
        const std::vector<double> column = ensemble.column(k);
        double e_star = 0.0;
        for (double v : column) {
            if (log_scale) {
                if (v <= 0.0)
                    throw NonPositiveDispersion("reference W*_" + std::to_string(k)
                                                + " is non-positive under a log variant");
                e_star += std::log(v);
            } else {
                e_star += v;
            }
        }
        e_star /= static_cast<double>(column.size());

        const double wk = w.at_k(k);
        if (log_scale && wk <= 0.0)
            throw NonPositiveDispersion("W_" + std::to_string(k)
                                        + " is non-positive under a log variant");
        curve.e_star[k - 1] = e_star;
        curve.gap[k - 1] = log_scale ? e_star - std::log(wk) : e_star - wk;
        curve.s[k - 1] = simulation_error(column, variant.scale, divisor);
    }
    return curve;
}

SelectionResult select_k(const GapCurve& curve) {
    const int k_max = curve.k_max();
    if (k_max < 2) throw InvalidConfig("select_k requires k_max >= 2");

    SelectionResult result;
    result.rule_trace.resize(k_max - 1);
    for (int k = 1; k <= k_max - 1; ++k) {
        const bool ok = curve.gap[k - 1] >= curve.gap[k] - curve.s[k];
        result.rule_trace[k - 1] = ok;
        if (ok && !result.selected_k) result.selected_k = k;
    }
    return result;
}

EstimateResult estimate_clusters(const Dataset& data, const GapConfig& config) {
    auto results = estimate_clusters_multi(data, config, {config.variant});
    return std::move(results.begin()->second);
}

std::map<GapVariant, EstimateResult> estimate_clusters_multi(
    const Dataset& data, const GapConfig& config, const std::vector<GapVariant>& variants) {
    validate(config, data.rows());
    if (variants.empty()) throw InvalidConfig("no gap variants requested");

    std::set<DispersionVariant> axes;
    for (const auto& v : variants) axes.insert(v.dispersion);

    const DistanceMatrix dm = pairwise_matrix(data, config.metric);
    const MergeTree tree = average_linkage(dm);

    std::map<DispersionVariant, DispersionCurve> data_curves;
    for (DispersionVariant axis : axes)
        data_curves.emplace(axis, dispersion_curve(dm, tree, config.k_max, axis));

    // One pass over the replicates, evaluating every requested dispersion
    // axis on the same reference tree.
    const FeatureRanges ranges = feature_ranges(data);
    std::map<DispersionVariant, ReferenceEnsemble> ensembles;
    for (DispersionVariant axis : axes)
        ensembles.emplace(axis, ReferenceEnsemble(config.b, config.k_max));

    parallel_for(config.b, resolve_threads(config.threads), [&](int b) {
        RngStream stream = derive_stream(config.seed, static_cast<std::uint64_t>(b));
        const Dataset reference = sample_reference(ranges, data.rows(), stream);
        const DistanceMatrix ref_dm = pairwise_matrix(reference, config.metric);
        const MergeTree ref_tree = average_linkage(ref_dm);
        for (DispersionVariant axis : axes) {
            const DispersionCurve curve = dispersion_curve(ref_dm, ref_tree, config.k_max, axis);
            auto& ensemble = ensembles.at(axis);
            for (int k = 1; k <= config.k_max; ++k) ensemble.at(b, k) = curve.at_k(k);
        }
    });

    std::map<GapVariant, EstimateResult> results;
    for (const auto& variant : variants) {
        EstimateResult res;
        res.curve = gap_curve(data_curves.at(variant.dispersion), ensembles.at(variant.dispersion),
                              variant, config.sd_divisor);
        res.selection = select_k(res.curve);
        if (res.selection.selected_k) res.partition = cut_tree(tree, *res.selection.selected_k);
        results.emplace(variant, std::move(res));
    }
    return results;
}

} // namespace gapcluster
