#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapcluster/analysis.hpp"
#include "gapcluster/dataset.hpp"
#include "gapcluster/errors.hpp"
#include "gapcluster/gapstat.hpp"
#include "gapcluster/report.hpp"
#include "gapcluster/simharness.hpp"

namespace {

using namespace gapcluster;

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << contents;
}

struct InputFlags {
    std::string path;
    bool has_header = false;
    int label_column = -1;

    Dataset load() const {
        CsvOptions options;
        options.has_header = has_header;
        if (label_column >= 0) options.label_column = static_cast<std::size_t>(label_column);
        return load_csv(path, options);
    }
};

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
    cmd->add_option("--input", flags.path, "CSV file to load")->required();
    cmd->add_flag("--has-header", flags.has_header, "first line is a header");
    cmd->add_option("--label-column", flags.label_column,
                    "0-based column holding row labels (excluded from features)");
}

std::vector<GapVariant> parse_variants(const std::string& list) {
    std::vector<GapVariant> variants;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) variants.push_back(gap_variant_from_string(item));
    if (variants.empty()) throw InvalidConfig("empty variant list");
    return variants;
}

int cmd_run(const InputFlags& input, const GapConfig& config, const std::string& out_path) {
    const Dataset data = input.load();
    const EstimateResult result = estimate_clusters(data, config);
    if (!out_path.empty()) write_file(out_path, dump_json(report_json(data, config, result)));
    if (result.selection.selected_k)
        std::cout << *result.selection.selected_k << "\n";
    else
        std::cout << "nd\n";
    return 0;
}

int cmd_simulate(const ExperimentSpec& spec, const std::string& out_prefix) {
    const ExperimentReport report = run_experiment(spec);
    const ExperimentReport reports[] = {report};
    write_file(out_prefix + "_freq.csv", summarize(reports));
    write_file(out_prefix + "_trace.json", dump_json(trace_json(report)));
    return 0;
}

int cmd_cluster(const InputFlags& input, int k, Metric metric, const std::string& out_path) {
    const Dataset data = input.load();
    if (k < 1 || static_cast<std::size_t>(k) > data.rows())
        throw InvalidK("k = " + std::to_string(k) + " outside [1, n]");
    const DistanceMatrix dm = pairwise_matrix(data, metric);
    const Partition part = cut_tree(average_linkage(dm), k);

    std::ostringstream csv;
    csv << "row,label\n";
    for (std::size_t i = 0; i < part.labels.size(); ++i) csv << i << ',' << part.labels[i] << '\n';
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_file(out_path, csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gap-statistic cluster-count estimation over average-linkage clustering"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "estimate the number of clusters in a CSV dataset");
    InputFlags run_input;
    add_input_flags(run, run_input);
    std::string run_variant = "log-pooled";
    std::string run_metric = "euclidean";
    std::string run_divisor = "population";
    std::string run_out;
    GapConfig run_cfg;
    run->add_option("--variant", run_variant, "log|direct - pooled|weighted");
    run->add_option("--kmax", run_cfg.k_max, "largest k to evaluate");
    run->add_option("--b", run_cfg.b, "reference replicates");
    run->add_option("--seed", run_cfg.seed, "master seed");
    run->add_option("--metric", run_metric, "euclidean|sqeuclidean");
    run->add_option("--sd-divisor", run_divisor, "population|sample");
    run->add_option("--threads", run_cfg.threads, "max worker threads (0 = auto)");
    run->add_option("--out", run_out, "write the JSON report here");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run one of the simulation families");
    std::string sim_family = "overlap";
    std::string sim_variants = "log-pooled,direct-pooled";
    std::string sim_divisor = "population";
    std::string sim_out;
    ExperimentSpec sim_spec;
    simulate->add_option("--family", sim_family, "overlap|unequal|degenerate")->required();
    simulate->add_option("--param", sim_spec.param,
                         "overlap: delta; unequal: size-ratio row 1..5; degenerate: dimension p")
        ->required();
    simulate->add_option("--reps", sim_spec.repetitions, "repetitions")->required();
    simulate->add_option("--variants", sim_variants, "comma-separated gap variants");
    simulate->add_option("--seed", sim_spec.master_seed, "master seed");
    simulate->add_option("--kmax", sim_spec.gap.k_max, "largest k to evaluate");
    simulate->add_option("--b", sim_spec.gap.b, "reference replicates");
    simulate->add_option("--sd-divisor", sim_divisor, "population|sample");
    simulate->add_option("--threads", sim_spec.threads, "max worker threads (0 = auto)");
    simulate->add_option("--out", sim_out, "output prefix (_freq.csv, _trace.json)")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "closed-form analysis helpers");
    analyze->require_subcommand(1);

    auto* rect = analyze->add_subcommand("rect-distance",
                                         "expected distance of two uniform points in a rectangle");
    RectSpec rect_spec;
    rect->add_option("--a", rect_spec.a, "side a")->required();
    rect->add_option("--b", rect_spec.b, "side b")->required();

    auto* predict = analyze->add_subcommand("predict-m",
                                            "largest cluster-size ratio the Gap rule tolerates");
    UnequalSizeScenario scenario;
    std::string predict_variant = "log";
    predict->add_option("--sigma", scenario.sigma, "cluster standard deviation")->required();
    predict->add_option("--delta", scenario.delta, "mean separation")->required();
    predict->add_option("--davg", scenario.d_avg, "average inter-cluster distance")->required();
    predict->add_option("--variant", predict_variant, "log|direct");
    predict->add_option("--m", scenario.m, "size ratio to test (default 1)");
    predict->add_option("--n", scenario.n_total, "total sample count (informational)");

    auto* conc = analyze->add_subcommand("concentration",
                                         "pairwise-distance spread of a uniform sample");
    int conc_p = 2;
    int conc_n = 100;
    std::uint64_t conc_seed = 0;
    conc->add_option("--p", conc_p, "dimension")->required();
    conc->add_option("--n", conc_n, "sample count")->required();
    conc->add_option("--seed", conc_seed, "stream seed");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "cut the average-linkage tree at k");
    InputFlags cluster_input;
    add_input_flags(cluster, cluster_input);
    int cluster_k = 0;
    std::string cluster_metric = "euclidean";
    std::string cluster_out;
    cluster->add_option("--k", cluster_k, "number of clusters")->required();
    cluster->add_option("--metric", cluster_metric, "euclidean|sqeuclidean");
    cluster->add_option("--out", cluster_out, "write labels CSV here (default: stdout)");

    try {
        app.parse(argc, argv);

        if (*run) {
            run_cfg.variant = gap_variant_from_string(run_variant);
            run_cfg.metric = metric_from_string(run_metric);
            if (run_divisor != "population" && run_divisor != "sample")
                throw InvalidConfig("--sd-divisor must be population or sample");
            run_cfg.sd_divisor =
                run_divisor == "population" ? SdDivisor::population : SdDivisor::sample;
            return cmd_run(run_input, run_cfg, run_out);
        }
        if (*simulate) {
            sim_spec.family = family_from_string(sim_family);
            sim_spec.variants = parse_variants(sim_variants);
            if (sim_divisor != "population" && sim_divisor != "sample")
                throw InvalidConfig("--sd-divisor must be population or sample");
            sim_spec.gap.sd_divisor =
                sim_divisor == "population" ? SdDivisor::population : SdDivisor::sample;
            return cmd_simulate(sim_spec, sim_out);
        }
        if (*rect) {
            nlohmann::ordered_json doc;
            doc["a"] = rect_spec.a;
            doc["b"] = rect_spec.b;
            doc["expected_distance"] = expected_rect_distance(rect_spec);
            std::cout << dump_json(doc);
            return 0;
        }
        if (*predict) {
            GapScale scale;
            if (predict_variant == "log")
                scale = GapScale::log_scale;
            else if (predict_variant == "direct")
                scale = GapScale::direct;
            else
                throw InvalidConfig("--variant must be log or direct");
            const FeasibilityResult result = feasible_ratio(scenario, scale);
            nlohmann::ordered_json doc;
            doc["sigma"] = scenario.sigma;
            doc["delta"] = scenario.delta;
            doc["d_avg"] = scenario.d_avg;
            doc["variant"] = predict_variant;
            doc["e_d1"] =
                expected_rect_distance({6.0 * scenario.sigma + scenario.delta, 6.0 * scenario.sigma});
            doc["e_d2"] = expected_rect_distance(
                {(6.0 * scenario.sigma + scenario.delta) / 2.0, 6.0 * scenario.sigma});
            doc["m"] = scenario.m;
            doc["holds_at_m"] = result.holds_at_m;
            doc["max_m"] = result.max_m;
            std::cout << dump_json(doc);
            return 0;
        }
        if (*conc) {
            RngStream stream(conc_seed);
            nlohmann::ordered_json doc;
            doc["p"] = conc_p;
            doc["n"] = conc_n;
            doc["seed"] = conc_seed;
            doc["spread_ratio"] = distance_concentration(conc_p, conc_n, stream);
            std::cout << dump_json(doc);
            return 0;
        }
        if (*cluster)
            return cmd_cluster(cluster_input, cluster_k, metric_from_string(cluster_metric),
                               cluster_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
