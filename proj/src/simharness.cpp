#include "gapcluster/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "gapcluster/errors.hpp"

namespace gapcluster {

namespace {

constexpr int kUnequalPool1Max = 1440;
constexpr int kUnequalPool2Max = 765;
constexpr double kUnequalDelta = 5.0;

struct UnequalRowSizes {
    int n1;
    int n2;
};

constexpr UnequalRowSizes kUnequalRows[] = {{765, 765}, {1020, 510}, {1224, 306}, {1360, 170}, {1440, 90}};

} // namespace

Family family_from_string(const std::string& name) {
    if (name == "overlap") return Family::overlap;
    if (name == "unequal") return Family::unequal;
    if (name == "degenerate") return Family::degenerate;
    throw InvalidConfig("unknown family '" + name + "'");
}

std::string to_string(Family family) {
    switch (family) {
    case Family::overlap: return "overlap";
    case Family::unequal: return "unequal";
    case Family::degenerate: return "degenerate";
    }
    throw InvalidConfig("unknown family tag");
}

Dataset gen_overlap(double delta, RngStream& stream) {
    if (delta < 0.0) throw InvalidConfig("overlap delta must be nonnegative");
    std::vector<double> values(200);
    for (int i = 0; i < 50; ++i) {
        values[2 * i] = stream.normal();
        values[2 * i + 1] = stream.normal();
    }
    for (int i = 50; i < 100; ++i) {
        values[2 * i] = stream.normal(delta, 1.0);
        values[2 * i + 1] = stream.normal(delta, 1.0);
    }
    return Dataset(100, 2, std::move(values));
}

std::pair<int, int> unequal_row_sizes(int row) {
    if (row < 1 || row > 5)
        throw InvalidRow("unequal-size row " + std::to_string(row) + " outside 1..5");
    return {kUnequalRows[row - 1].n1, kUnequalRows[row - 1].n2};
}

Dataset gen_unequal(int row, std::uint64_t shared_pool_seed) {
    const auto [n1, n2] = unequal_row_sizes(row);

    // Full pools are always drawn so that rows sharing a pool seed share
    // sample prefixes exactly.
    RngStream pool1 = derive_stream(shared_pool_seed, 0);
    RngStream pool2 = derive_stream(shared_pool_seed, 1);
    std::vector<double> pool1_pts(static_cast<std::size_t>(kUnequalPool1Max) * 2);
    std::vector<double> pool2_pts(static_cast<std::size_t>(kUnequalPool2Max) * 2);
    for (auto& v : pool1_pts) v = pool1.normal();
    for (std::size_t i = 0; i < pool2_pts.size(); i += 2) {
        pool2_pts[i] = pool2.normal(kUnequalDelta, 1.0);
        pool2_pts[i + 1] = pool2.normal();
    }

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n1 + n2) * 2);
    values.insert(values.end(), pool1_pts.begin(), pool1_pts.begin() + 2 * n1);
    values.insert(values.end(), pool2_pts.begin(), pool2_pts.begin() + 2 * n2);
    return Dataset(n1 + n2, 2, std::move(values));
}

Dataset gen_degenerate(int p, RngStream& stream) {
    if (p < 2) throw InvalidConfig("degenerate family requires p >= 2");
    std::vector<double> values(static_cast<std::size_t>(100) * p, 0.0);
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < p; ++j) values[static_cast<std::size_t>(i) * p + j] = stream.uniform(0.0, 10.0);
    for (int i = 50; i < 100; ++i)
        values[static_cast<std::size_t>(i) * p] = stream.uniform(0.0, 10.0);
    return Dataset(100, p, std::move(values));
}

int FrequencyTable::total() const {
    int sum = ge10 + nd;
    for (int c : k_counts) sum += c;
    return sum;
}

void FrequencyTable::add(const std::optional<int>& selected_k) {
    if (!selected_k) {
        ++nd;
    } else if (*selected_k >= 10) {
        ++ge10;
    } else {
        ++k_counts[*selected_k - 1];
    }
}

namespace {

Dataset generate_family(Family family, double param, std::uint64_t dataset_seed) {
    switch (family) {
    case Family::overlap: {
        RngStream stream(dataset_seed);
        return gen_overlap(param, stream);
    }
    case Family::unequal: {
        const int row = static_cast<int>(param);
        if (static_cast<double>(row) != param) throw InvalidRow("unequal-size row must be integral");
        return gen_unequal(row, dataset_seed);
    }
    case Family::degenerate: {
        const int p = static_cast<int>(param);
        if (static_cast<double>(p) != param) throw InvalidConfig("dimension p must be integral");
        RngStream stream(dataset_seed);
        return gen_degenerate(p, stream);
    }
    }
    throw InvalidConfig("unknown family tag");
}

} // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    if (spec.repetitions < 1) throw InvalidConfig("repetitions must be >= 1");
    if (spec.variants.empty()) throw InvalidConfig("no variants requested");

    ExperimentReport report;
    report.family = spec.family;
    report.param = spec.param;
    report.repetitions = spec.repetitions;
    report.k_max = spec.gap.k_max;
    report.master_seed = spec.master_seed;
    report.traces.resize(spec.repetitions);

    int threads = spec.threads > 0 ? spec.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, spec.repetitions);

    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&](int stride, int offset) {
        try {
            for (int r = offset; r < spec.repetitions; r += stride) {
                RepetitionTrace trace;
                trace.repetition = r;
                trace.rep_seed = derive_seed(spec.master_seed, static_cast<std::uint64_t>(r));

                const Dataset data =
                    generate_family(spec.family, spec.param, derive_seed(trace.rep_seed, 0));
                GapConfig cfg = spec.gap;
                cfg.seed = derive_seed(trace.rep_seed, 1);
                cfg.threads = 1; // parallelism lives at the repetition level

                try {
                    auto results = estimate_clusters_multi(data, cfg, spec.variants);
                    for (const auto& [variant, res] : results)
                        trace.selected[variant] = res.selection.selected_k;
                } catch (const DegenerateDispersion&) {
                    for (const auto& variant : spec.variants)
                        trace.selected[variant] = std::nullopt;
                    trace.degenerate_dispersion = true;
                }
                report.traces[r] = std::move(trace);
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (threads <= 1) {
        worker(1, 0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, threads, t);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    for (const auto& variant : spec.variants) report.frequencies[variant] = FrequencyTable{};
    for (const auto& trace : report.traces)
        for (const auto& [variant, selected] : trace.selected)
            report.frequencies.at(variant).add(selected);
    return report;
}

std::string summarize(std::span<const ExperimentReport> reports) {
    if (reports.empty()) throw HeterogeneousReports("no reports to summarize");
    for (const auto& rep : reports)
        if (rep.k_max != reports.front().k_max)
            throw HeterogeneousReports("reports disagree on k_max");

    // Rows are keyed by (family, param, variant); reports sharing a key merge
    // by adding counts.
    std::map<std::tuple<std::string, double, std::string>, FrequencyTable> rows;
    for (const auto& rep : reports) {
        for (const auto& [variant, freq] : rep.frequencies) {
            FrequencyTable& row = rows[{to_string(rep.family), rep.param, to_string(variant)}];
            for (int k = 0; k < 9; ++k) row.k_counts[k] += freq.k_counts[k];
            row.ge10 += freq.ge10;
            row.nd += freq.nd;
        }
    }

    std::ostringstream out;
    out << "family,param,variant,repetitions";
    for (int k = 1; k <= 9; ++k) out << ",k" << k;
    out << ",ge10,nd";
    for (int k = 1; k <= 9; ++k) out << ",pct_k" << k;
    out << ",pct_ge10,pct_nd\n";

    char buf[32];
    const auto pct = [&](int count, int total) {
        std::snprintf(buf, sizeof buf, "%.2f", 100.0 * count / total);
        return std::string(buf);
    };

    for (const auto& [key, freq] : rows) {
        const int total = freq.total();
        out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key) << ','
            << total;
        for (int c : freq.k_counts) out << ',' << c;
        out << ',' << freq.ge10 << ',' << freq.nd;
        for (int c : freq.k_counts) out << ',' << pct(c, total);
        out << ',' << pct(freq.ge10, total) << ',' << pct(freq.nd, total) << '\n';
    }
    return out.str();
}

} // namespace gapcluster
