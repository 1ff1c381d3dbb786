#include "patchflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "patchflow/perfmodel.hpp"

namespace patchflow {

double round3(double value) {
    const double rounded = std::round(value * 1000.0) / 1000.0;
    return rounded == 0.0 ? 0.0 : rounded;
}

namespace {

nlohmann::json timing_json(std::uint64_t setup_ns, std::uint64_t parallel_ns,
                           std::uint64_t serial_ns, std::uint64_t total_ns) {
    return nlohmann::json{
        {"setup_ns", setup_ns},
        {"parallel_ns", parallel_ns},
        {"serial_ns", serial_ns},
        {"total_ns", total_ns},
    };
}

nlohmann::json counters_json(const WorkCounters& counters) {
    return nlohmann::json{
        {"interp_paper", counters.interp_paper},
        {"interp_raw", counters.interp_raw},
        {"sad_evals", counters.sad_evals},
    };
}

}  // namespace

nlohmann::json flow_report(const FlowResult& result, const FlowConfig& config) {
    nlohmann::json per_poi = nlohmann::json::array();
    for (const PoiFlow& flow : result.per_poi) {
        per_poi.push_back({
            {"anchor_x", flow.anchor.x},
            {"anchor_y", flow.anchor.y},
            {"dx_hp", flow.dx_hp},
            {"dy_hp", flow.dy_hp},
            {"sad", flow.best_sad},
            {"refined", flow.refined},
        });
    }

    return nlohmann::json{
        {"schema_version", kReportSchemaVersion},
        {"mode", "flow"},
        {"variant", variant_name(result.variant)},
        {"workers", result.workers},
        {"width", config.width},
        {"height", config.height},
        {"global_flow",
         {{"fx_px", round3(result.global_flow.fx)},
          {"fy_px", round3(result.global_flow.fy)},
          {"contributing", result.global_flow.contributing}}},
        {"per_poi", per_poi},
        {"counters", counters_json(result.counters)},
        {"timing", timing_json(result.timing.setup_ns, result.timing.parallel_ns,
                               result.timing.aggregate_ns, result.timing.total_ns)},
    };
}

nlohmann::json bench_report(const FlowConfig& config,
                            const std::vector<TimingSummary>& summaries) {
    nlohmann::json entries = nlohmann::json::array();
    for (const TimingSummary& summary : summaries) {
        AmdahlInput model;
        model.total_work = static_cast<double>(summary.baseline_total_ns);
        model.parallel_work = static_cast<double>(summary.baseline_parallel_ns);
        model.cores = summary.workers;
        const SpeedupReport speedup =
            make_speedup_report(summary.parallel_speedup, model);

        entries.push_back({
            {"workers", summary.workers},
            {"repetitions", summary.repetitions},
            {"timing", timing_json(summary.setup_ns, summary.parallel_ns,
                                   summary.aggregate_ns, summary.total_ns)},
            {"baseline",
             {{"parallel_ns", summary.baseline_parallel_ns},
              {"total_ns", summary.baseline_total_ns}}},
            {"total_speedup", round3(summary.total_speedup)},
            {"amdahl",
             {{"cores", summary.workers},
              {"limit", round3(speedup.limit)},
              {"measured_speedup", round3(speedup.measured)},
              {"efficiency", round3(speedup.efficiency)}}},
        });
    }

    return nlohmann::json{
        {"schema_version", kReportSchemaVersion},
        {"mode", "bench"},
        {"variant", variant_name(config.variant)},
        {"width", config.width},
        {"height", config.height},
        {"entries", entries},
    };
}

std::string report_to_string(const nlohmann::json& doc) {
    return doc.dump(2) + "\n";
}

void write_json_file(const nlohmann::json& doc, const std::string& path) {
    if (path.empty()) {
        throw std::runtime_error("report: empty output path");
    }
    const std::string text = report_to_string(doc);
    const std::string tmp_path = path + ".tmp";
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("report: cannot open '" + tmp_path + "' for writing");
        }
        out << text;
        out.flush();
        if (!out) {
            out.close();
            std::remove(tmp_path.c_str());
            throw std::runtime_error("report: write failure on '" + tmp_path + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp_path, path, ec);
    if (ec) {
        std::remove(tmp_path.c_str());
        throw std::runtime_error("report: cannot move report into place at '" + path +
                                 "': " + ec.message());
    }
}

}  // namespace patchflow
