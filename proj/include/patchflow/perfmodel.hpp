#pragma once

namespace patchflow {

// Work split for an Amdahl's-law estimate. Units are abstract — cycle
// counts, nanoseconds, and operation counts all work, as long as both
// figures use the same unit.
struct AmdahlInput {
    double total_work = 0.0;
    double parallel_work = 0.0;
    int cores = 1;
};

// Maximum speedup total / ((total - parallel) + parallel/cores).
// Throws std::invalid_argument unless 0 <= parallel_work <= total_work,
// total_work > 0, and cores >= 1.
double amdahl_limit(const AmdahlInput& input);

// Per-core share of the parallel work under perfect distribution:
// parallel_work / cores. Precondition (asserted): cores >= 1.
double ideal_parallel_work(double parallel_work, int cores);

// Measured speedup set against the model's ceiling.
struct SpeedupReport {
    double measured = 0.0;
    double limit = 0.0;
    double efficiency = 0.0;  // measured / limit
};

SpeedupReport make_speedup_report(double measured_speedup, const AmdahlInput& modeled);

}  // namespace patchflow
