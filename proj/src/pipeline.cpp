#include "patchflow/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <stdexcept>

#include "patchflow/interp.hpp"

namespace patchflow {

WorkerPool::WorkerPool(int workers) : workers_(workers) {
    if (workers < 1) {
        throw std::invalid_argument("worker pool: worker count must be >= 1");
    }
    threads_.reserve(static_cast<std::size_t>(workers - 1));
    for (int i = 1; i < workers; ++i) {
        threads_.emplace_back([this, i] { worker_loop(i); });
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stop_ = true;
    }
    start_cv_.notify_all();
    for (std::thread& t : threads_) {
        t.join();
    }
}

void WorkerPool::worker_loop(int index) {
    std::uint64_t seen = 0;
    for (;;) {
        const std::function<void(int)>* job = nullptr;
        {
            std::unique_lock<std::mutex> lock(mutex_);
            start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) {
                return;
            }
            seen = generation_;
            job = task_;
        }
        try {
            (*job)(index);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mutex_);
            if (!error_) {
                error_ = std::current_exception();
            }
        }
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (--remaining_ == 0) {
                done_cv_.notify_all();
            }
        }
    }
}

void WorkerPool::run(const std::function<void(int)>& task) {
    if (workers_ == 1) {
        task(0);
        return;
    }
    {
        std::lock_guard<std::mutex> lock(mutex_);
        task_ = &task;
        remaining_ = workers_ - 1;
        error_ = nullptr;
        ++generation_;
    }
    start_cv_.notify_all();

    std::exception_ptr caller_error;
    try {
        task(0);
    } catch (...) {
        caller_error = std::current_exception();
    }

    std::unique_lock<std::mutex> lock(mutex_);
    done_cv_.wait(lock, [&] { return remaining_ == 0; });
    task_ = nullptr;
    const std::exception_ptr worker_error = error_;
    lock.unlock();

    if (caller_error) {
        std::rethrow_exception(caller_error);
    }
    if (worker_error) {
        std::rethrow_exception(worker_error);
    }
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ns_between(Clock::time_point a, Clock::time_point b) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count());
}

}  // namespace

FlowResult compute_flow(const Frame& frame1, const Frame& frame2,
                        const FlowConfig& config, WorkerPool& pool) {
    if (pool.workers() != config.workers) {
        throw std::invalid_argument("compute_flow: pool worker count differs from config");
    }
    config.validate();
    if (frame1.width() != config.width || frame1.height() != config.height ||
        frame2.width() != config.width || frame2.height() != config.height) {
        throw std::invalid_argument("compute_flow: frame dimensions differ from config");
    }

    const auto t0 = Clock::now();

    // --- setup phase (serial) ---
    const std::vector<PoiAnchor> anchors = config.anchors();
    const int poi_count = static_cast<int>(anchors.size());
    const int workers = config.workers;

    std::vector<PoiFlow> per_poi(static_cast<std::size_t>(poi_count));
    std::vector<WorkCounters> worker_counters(static_cast<std::size_t>(workers));
    WorkCounters setup_counters;

    // Half-pixel values are sampled from frame2 (the frame being searched),
    // so the global variant's planes are built over frame2 — a one-time
    // serial cost charged to setup.
    std::unique_ptr<HalfPixelPlanes> planes;
    if (config.variant == Variant::GlobalOptim) {
        planes = std::make_unique<HalfPixelPlanes>(
            build_planes(frame2, setup_counters));
    }

    std::vector<std::unique_ptr<HalfPixelSampler>> samplers;
    samplers.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        samplers.push_back(make_sampler(config.variant, frame2, planes.get(),
                                        config.patch,
                                        worker_counters[static_cast<std::size_t>(w)]));
    }

    const int block = (poi_count + workers - 1) / workers;

    const auto t1 = Clock::now();

    // --- parallel phase: contiguous POI blocks, disjoint result slots ---
    pool.run([&](int w) {
        const int begin = w * block;
        const int end = std::min(poi_count, begin + block);
        HalfPixelSampler& sampler = *samplers[static_cast<std::size_t>(w)];
        WorkCounters& counters = worker_counters[static_cast<std::size_t>(w)];
        for (int i = begin; i < end; ++i) {
            per_poi[static_cast<std::size_t>(i)] =
                match_poi(frame1, frame2, anchors[static_cast<std::size_t>(i)],
                          config, sampler, counters);
        }
    });

    const auto t2 = Clock::now();

    // --- aggregate phase (serial): counters summed in worker order ---
    WorkCounters counters = setup_counters;
    for (const WorkCounters& wc : worker_counters) {
        counters += wc;
    }
    const GlobalFlow global = aggregate_flow(per_poi);

    const auto t3 = Clock::now();

    FlowResult result;
    result.global_flow = global;
    result.per_poi = std::move(per_poi);
    result.counters = counters;
    result.timing.setup_ns = ns_between(t0, t1);
    result.timing.parallel_ns = ns_between(t1, t2);
    result.timing.aggregate_ns = ns_between(t2, t3);
    result.timing.total_ns =
        result.timing.setup_ns + result.timing.parallel_ns + result.timing.aggregate_ns;
    result.variant = config.variant;
    result.workers = workers;
    return result;
}

FlowResult compute_flow(const Frame& frame1, const Frame& frame2,
                        const FlowConfig& config) {
    WorkerPool pool(config.workers);
    return compute_flow(frame1, frame2, config, pool);
}

namespace {

// Lower median: deterministic and exact for odd counts, the smaller of the
// two central values for even counts.
std::uint64_t lower_median(std::vector<std::uint64_t> values) {
    const std::size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                     values.end());
    return values[mid];
}

struct PhaseMedians {
    std::uint64_t setup_ns = 0;
    std::uint64_t parallel_ns = 0;
    std::uint64_t aggregate_ns = 0;
    std::uint64_t total_ns = 0;
};

PhaseMedians measure_medians(const Frame& frame1, const Frame& frame2,
                             FlowConfig config, int workers, int repetitions) {
    config.workers = workers;
    WorkerPool pool(workers);
    compute_flow(frame1, frame2, config, pool);  // warm-up, untimed

    std::vector<std::uint64_t> setup, parallel, aggregate, total;
    setup.reserve(static_cast<std::size_t>(repetitions));
    parallel.reserve(static_cast<std::size_t>(repetitions));
    aggregate.reserve(static_cast<std::size_t>(repetitions));
    total.reserve(static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r) {
        const FlowResult result = compute_flow(frame1, frame2, config, pool);
        setup.push_back(result.timing.setup_ns);
        parallel.push_back(result.timing.parallel_ns);
        aggregate.push_back(result.timing.aggregate_ns);
        total.push_back(result.timing.total_ns);
    }

    PhaseMedians medians;
    medians.setup_ns = lower_median(std::move(setup));
    medians.parallel_ns = lower_median(std::move(parallel));
    medians.aggregate_ns = lower_median(std::move(aggregate));
    medians.total_ns = lower_median(std::move(total));
    return medians;
}

double ratio(std::uint64_t baseline_ns, std::uint64_t measured_ns) {
    if (measured_ns == 0) {
        return 1.0;
    }
    return static_cast<double>(baseline_ns) / static_cast<double>(measured_ns);
}

}  // namespace

TimingSummary run_phases_timed(const Frame& frame1, const Frame& frame2,
                               const FlowConfig& config, int repetitions) {
    if (repetitions < 1) {
        throw std::invalid_argument("run_phases_timed: repetitions must be >= 1");
    }

    const PhaseMedians measured =
        measure_medians(frame1, frame2, config, config.workers, repetitions);

    TimingSummary summary;
    summary.variant = config.variant;
    summary.workers = config.workers;
    summary.repetitions = repetitions;
    summary.setup_ns = measured.setup_ns;
    summary.parallel_ns = measured.parallel_ns;
    summary.aggregate_ns = measured.aggregate_ns;
    summary.total_ns = measured.total_ns;

    if (config.workers == 1) {
        summary.baseline_parallel_ns = measured.parallel_ns;
        summary.baseline_total_ns = measured.total_ns;
        summary.parallel_speedup = 1.0;
        summary.total_speedup = 1.0;
        return summary;
    }

    const PhaseMedians baseline =
        measure_medians(frame1, frame2, config, 1, repetitions);
    summary.baseline_parallel_ns = baseline.parallel_ns;
    summary.baseline_total_ns = baseline.total_ns;
    summary.parallel_speedup = ratio(baseline.parallel_ns, measured.parallel_ns);
    summary.total_speedup = ratio(baseline.total_ns, measured.total_ns);
    return summary;
}

}  // namespace patchflow
