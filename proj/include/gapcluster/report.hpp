#pragma once

#include <string>

#include <json.hpp>

#include "gapcluster/gapstat.hpp"
#include "gapcluster/simharness.hpp"

namespace gapcluster {

/// Gap report (schema version 1, see docs/report-schema.md). Field names and
/// ordering are frozen; identical inputs produce byte-identical documents.
nlohmann::ordered_json report_json(const Dataset& data, const GapConfig& config,
                                   const EstimateResult& result);

/// Per-repetition trace document for a simulation experiment (schema v1).
nlohmann::ordered_json trace_json(const ExperimentReport& report);

std::string dump_json(const nlohmann::ordered_json& doc);

} // namespace gapcluster
