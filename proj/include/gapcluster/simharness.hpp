#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gapcluster/dataset.hpp"
#include "gapcluster/gapstat.hpp"
#include "gapcluster/rng.hpp"

namespace gapcluster {

enum class Family {
    overlap,    // two 2D Gaussians, means 0 and delta apart
    unequal,    // two 2D Gaussians with size ratio m, shared sample pools
    degenerate, // uniform cluster vs axis-degenerate cluster in dimension p
};

Family family_from_string(const std::string& name);
std::string to_string(Family family);

/// 100 x 2: rows 0..49 with both coordinates N(0,1), rows 50..99 with both
/// coordinates N(delta,1). Draw order: row by row, x then y.
Dataset gen_overlap(double delta, RngStream& stream);

/// Two-cluster design with n = 1530 and size ratio m = N1/N2 in
/// {1,2,4,8,16}. Rows with the same shared_pool_seed share their sample pools:
/// the full pools (1440 from N((0,0),I), 765 from N((5,0),I)) are drawn from
/// streams derive(shared_pool_seed, 0) and derive(shared_pool_seed, 1), and
/// the dataset takes the first N1 of pool 1 followed by the first N2 of
/// pool 2.
Dataset gen_unequal(int row, std::uint64_t shared_pool_seed);

/// Cluster sizes (N1, N2) for design row 1..5.
std::pair<int, int> unequal_row_sizes(int row);

/// 100 x p: rows 0..49 fully U[0,10]; rows 50..99 have feature 0 ~ U[0,10]
/// and every other feature exactly zero (no draws consumed for the zeros).
Dataset gen_degenerate(int p, RngStream& stream);

struct ExperimentSpec {
    Family family = Family::overlap;
    double param = 0.0; // overlap: delta; unequal: row 1..5; degenerate: p
    int repetitions = 1;
    GapConfig gap;                  // template; seed is derived per repetition
    std::vector<GapVariant> variants{GapVariant{}};
    std::uint64_t master_seed = 0;
    int threads = 0; // parallelism over repetitions; 0 = hardware concurrency
};

/// Selected-k frequency buckets: k = 1..9,
/// ">=10", and "nd".
struct FrequencyTable {
    std::vector<int> k_counts = std::vector<int>(9, 0); // index i -> k = i+1
    int ge10 = 0;
    int nd = 0;

    int total() const;
    void add(const std::optional<int>& selected_k);
};

struct RepetitionTrace {
    int repetition = 0;
    std::uint64_t rep_seed = 0;
    std::map<GapVariant, std::optional<int>> selected; // empty optional = nd
    bool degenerate_dispersion = false;
};

struct ExperimentReport {
    Family family = Family::overlap;
    double param = 0.0;
    int repetitions = 0;
    int k_max = 0;
    std::uint64_t master_seed = 0;
    std::map<GapVariant, FrequencyTable> frequencies;
    std::vector<RepetitionTrace> traces;
};

/// Batch driver. Repetition r derives rep_seed = derive_seed(master_seed, r);
/// the dataset stream/seed is derive_seed(rep_seed, 0) and the gap seed is
/// derive_seed(rep_seed, 1). Repetitions may run concurrently; the report is
/// ordered by repetition index and independent of scheduling. A repetition
/// that ends in DegenerateDispersion is tallied under "nd" with a flag.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// CSV frequency table: one row per (family, param, variant), columns
/// k = 1..9, ">=10", "nd", as counts then percentages. Reports must share
/// k_max (HeterogeneousReports otherwise).
std::string summarize(std::span<const ExperimentReport> reports);

} // namespace gapcluster
