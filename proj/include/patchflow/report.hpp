#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "patchflow/pipeline.hpp"

namespace patchflow {

// Bumped whenever a report field changes shape or meaning.
inline constexpr int kReportSchemaVersion = 1;

// Rounds to 3 decimal places and normalizes -0.0 to 0.0, so emitted flow
// values are stable golden-file material.
double round3(double value);

// Full flow document: schema_version, mode, variant, workers, frame
// dimensions, global flow (3-decimal pixels), per-POI rows, work counters,
// and phase timing. Key order is alphabetical (nlohmann's default), so the
// serialized bytes are deterministic for fixed inputs apart from the
// timing subobject.
nlohmann::json flow_report(const FlowResult& result, const FlowConfig& config);

// Bench document: one entry per timing summary, each with phase medians,
// measured speedups, and an Amdahl section whose limit comes from the
// measured one-worker phase split at that entry's core count.
nlohmann::json bench_report(const FlowConfig& config,
                            const std::vector<TimingSummary>& summaries);

// Serializes with 2-space indentation and a trailing newline.
std::string report_to_string(const nlohmann::json& doc);

// All-or-nothing write: serializes to a sibling temp file and renames it
// over `path`, so a failed write leaves no partial report behind. Throws
// std::runtime_error on failure.
void write_json_file(const nlohmann::json& doc, const std::string& path);

}  // namespace patchflow
