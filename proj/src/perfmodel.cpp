#include "patchflow/perfmodel.hpp"

#include <cassert>
#include <stdexcept>

namespace patchflow {

double amdahl_limit(const AmdahlInput& input) {
    if (input.cores < 1) {
        throw std::invalid_argument("amdahl_limit: cores must be >= 1");
    }
    if (input.total_work <= 0.0) {
        throw std::invalid_argument("amdahl_limit: total work must be positive");
    }
    if (input.parallel_work < 0.0 || input.parallel_work > input.total_work) {
        throw std::invalid_argument(
            "amdahl_limit: parallel work must lie in [0, total work]");
    }
    const double serial = input.total_work - input.parallel_work;
    const double denom = serial + input.parallel_work / static_cast<double>(input.cores);
    return input.total_work / denom;
}

double ideal_parallel_work(double parallel_work, int cores) {
    assert(cores >= 1);
    return parallel_work / static_cast<double>(cores);
}

SpeedupReport make_speedup_report(double measured_speedup, const AmdahlInput& modeled) {
    SpeedupReport report;
    report.measured = measured_speedup;
    report.limit = amdahl_limit(modeled);
    report.efficiency = report.measured / report.limit;
    return report;
}

}  // namespace patchflow
