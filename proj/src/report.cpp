#include "gapcluster/report.hpp"

namespace gapcluster {

namespace {

nlohmann::ordered_json selected_to_json(const std::optional<int>& selected_k) {
    if (selected_k) return *selected_k;
    return "nd";
}

} // namespace

nlohmann::ordered_json report_json(const Dataset& data, const GapConfig& config,
                                   const EstimateResult& result) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["config"] = {
        {"variant", to_string(config.variant)},
        {"k_max", config.k_max},
        {"b", config.b},
        {"seed", config.seed},
        {"metric", to_string(config.metric)},
        {"sd_divisor", config.sd_divisor == SdDivisor::population ? "population" : "sample"},
        {"n", data.rows()},
        {"p", data.cols()},
    };

    nlohmann::ordered_json per_k;
    std::vector<int> ks(result.curve.k_max());
    for (int k = 1; k <= result.curve.k_max(); ++k) ks[k - 1] = k;
    per_k["k"] = ks;
    per_k["w"] = result.curve.w;
    per_k["e_star"] = result.curve.e_star;
    per_k["gap"] = result.curve.gap;
    per_k["s"] = result.curve.s;
    doc["per_k"] = per_k;

    doc["rule_trace"] = result.selection.rule_trace;
    doc["selected_k"] = selected_to_json(result.selection.selected_k);
    if (result.partition)
        doc["labels"] = result.partition->labels;
    else
        doc["labels"] = nullptr;
    return doc;
}

nlohmann::ordered_json trace_json(const ExperimentReport& report) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["family"] = to_string(report.family);
    doc["param"] = report.param;
    doc["repetitions"] = report.repetitions;
    doc["k_max"] = report.k_max;
    doc["master_seed"] = report.master_seed;

    nlohmann::ordered_json counts;
    for (const auto& [variant, freq] : report.frequencies) {
        nlohmann::ordered_json row;
        for (int k = 1; k <= 9; ++k) row["k" + std::to_string(k)] = freq.k_counts[k - 1];
        row["ge10"] = freq.ge10;
        row["nd"] = freq.nd;
        counts[to_string(variant)] = row;
    }
    doc["frequencies"] = counts;

    nlohmann::ordered_json traces = nlohmann::ordered_json::array();
    for (const auto& trace : report.traces) {
        nlohmann::ordered_json t;
        t["repetition"] = trace.repetition;
        t["rep_seed"] = trace.rep_seed;
        nlohmann::ordered_json selected;
        for (const auto& [variant, sel] : trace.selected)
            selected[to_string(variant)] = selected_to_json(sel);
        t["selected_k"] = selected;
        t["degenerate_dispersion"] = trace.degenerate_dispersion;
        traces.push_back(t);
    }
    doc["traces"] = traces;
    return doc;
}

std::string dump_json(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

} // namespace gapcluster
