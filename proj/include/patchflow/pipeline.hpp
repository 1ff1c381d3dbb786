#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "patchflow/aggregate.hpp"
#include "patchflow/frame.hpp"
#include "patchflow/matcher.hpp"

namespace patchflow {

// Wall-clock duration of each pipeline phase. total_ns is the exact sum of
// the three phases (consecutive timestamps of one clock).
struct PhaseTimes {
    std::uint64_t setup_ns = 0;
    std::uint64_t parallel_ns = 0;
    std::uint64_t aggregate_ns = 0;
    std::uint64_t total_ns = 0;
};

// Complete result of one frame-pair flow computation.
struct FlowResult {
    GlobalFlow global_flow;
    std::vector<PoiFlow> per_poi;
    WorkCounters counters;
    PhaseTimes timing;
    Variant variant = Variant::LocalOptim;
    int workers = 1;
};

// Fixed-size pool executing one task across `workers` logical workers.
// Spawns workers-1 threads; the calling thread always participates as
// worker 0, so a one-worker pool runs everything inline. Reusable across
// many run() calls to amortize thread startup. One caller thread at a time.
class WorkerPool {
public:
    explicit WorkerPool(int workers);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    int workers() const { return workers_; }

    // Invokes task(worker_index) once per worker index in [0, workers()),
    // concurrently, and blocks until every invocation returns. The first
    // exception thrown by any worker is rethrown here after all finish.
    void run(const std::function<void(int)>& task);

private:
    void worker_loop(int index);

    int workers_;
    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    const std::function<void(int)>* task_ = nullptr;
    std::uint64_t generation_ = 0;
    int remaining_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

// Computes per-POI flows and the aggregate flow for one frame pair.
//
// Phases: (1) setup — anchors, result slots, per-worker samplers, and (for
// the global-planes variant) the one-time plane build, all serial; (2)
// parallel — POIs split into `workers` contiguous blocks of ceil(N/workers),
// each block matched by one worker writing disjoint result slots with a
// private counter accumulator; (3) aggregate — counters summed in worker
// order, histograms built, flow averaged, all serial.
//
// The result is bitwise identical for any worker count and across the three
// interpolation variants (only counters and timing differ by variant).
// Throws std::invalid_argument on config/frame mismatch.
FlowResult compute_flow(const Frame& frame1, const Frame& frame2,
                        const FlowConfig& config);

// Same, but reuses an existing pool (pool.workers() must equal
// config.workers) so repeated calls pay no thread startup.
FlowResult compute_flow(const Frame& frame1, const Frame& frame2,
                        const FlowConfig& config, WorkerPool& pool);

// Median phase times over repeated runs, plus speedup versus a one-worker
// baseline measured the same way.
struct TimingSummary {
    Variant variant = Variant::LocalOptim;
    int workers = 1;
    int repetitions = 1;
    // Lower-median phase times at `workers`.
    std::uint64_t setup_ns = 0;
    std::uint64_t parallel_ns = 0;
    std::uint64_t aggregate_ns = 0;
    std::uint64_t total_ns = 0;
    // Lower-median times of the one-worker baseline (equal to the fields
    // above when workers == 1).
    std::uint64_t baseline_parallel_ns = 0;
    std::uint64_t baseline_total_ns = 0;
    // baseline / measured; exactly 1.0 when workers == 1.
    double parallel_speedup = 1.0;
    double total_speedup = 1.0;
};

// Runs compute_flow `repetitions` times (after one untimed warm-up) with a
// pool reused across runs, takes lower-median phase times, and — when
// config.workers > 1 — repeats the measurement at one worker to report
// speedups. Throws std::invalid_argument when repetitions < 1.
TimingSummary run_phases_timed(const Frame& frame1, const Frame& frame2,
                               const FlowConfig& config, int repetitions);

}  // namespace patchflow
