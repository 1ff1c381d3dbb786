// Shipping gate: one PASS/FAIL line per release criterion, exit code equal to
// the number of failed criteria. Tolerances are pinned here, in code.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "patchflow/matcher.hpp"
#include "patchflow/perfmodel.hpp"
#include "patchflow/pgm_io.hpp"
#include "patchflow/pipeline.hpp"
#include "patchflow/report.hpp"
#include "patchflow/synth.hpp"

using namespace patchflow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures for one criterion; keeps the first detail for the report line.
struct Criterion {
    int failures = 0;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            if (detail.empty()) {
                detail = what;
            }
        }
    }

    bool passed() const { return failures == 0; }
};

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return buffer;
}

FlowConfig variant_config(Variant variant) {
    FlowConfig config = default_config();
    config.variant = variant;
    return config;
}

SynthSpec seeded_spec(std::uint64_t seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.shift_x_hp = static_cast<int>(seed % 19) - 9;
    spec.shift_y_hp = static_cast<int>((seed / 19) % 19) - 9;
    spec.noise_amplitude = static_cast<int>(seed % 11);
    return spec;
}

// --- criterion 1: per-frame interpolation-calculation totals -----------------
Criterion check_interp_counts(std::string& note) {
    constexpr std::uint64_t kOriginalExact = 49152;
    constexpr std::uint64_t kGlobalExact = 12288;
    constexpr std::uint64_t kLocalExact = 19584;
    constexpr std::uint64_t kLocalPublished = 19200;
    constexpr double kLocalPublishedTolerance = 0.025;  // 2.5%
    constexpr double kMaxSeconds = 1.0;

    Criterion c;
    const auto start = Clock::now();

    // Counters depend only on the configuration, never on pixel content:
    // measure on two unrelated pairs and require identical totals.
    const auto pair_a = generate_pair(SynthSpec{.shift_x_hp = 3, .shift_y_hp = -2, .seed = 1});
    const auto pair_b = generate_pair(
        SynthSpec{.shift_x_hp = -6, .shift_y_hp = 5, .noise_amplitude = 9, .seed = 17});

    std::uint64_t local_total = 0;
    for (Variant variant : {Variant::Original, Variant::LocalOptim, Variant::GlobalOptim}) {
        const FlowConfig config = variant_config(variant);
        const std::uint64_t a =
            compute_flow(pair_a.first, pair_a.second, config).counters.interp_paper;
        const std::uint64_t b =
            compute_flow(pair_b.first, pair_b.second, config).counters.interp_paper;
        c.expect(a == b, fmt("%s count differs across inputs: %llu vs %llu",
                             variant_name(variant), (unsigned long long)a,
                             (unsigned long long)b));
        switch (variant) {
            case Variant::Original:
                c.expect(a == kOriginalExact,
                         fmt("original: %llu != %llu", (unsigned long long)a,
                             (unsigned long long)kOriginalExact));
                break;
            case Variant::LocalOptim:
                local_total = a;
                c.expect(a == kLocalExact, fmt("local: %llu != %llu", (unsigned long long)a,
                                               (unsigned long long)kLocalExact));
                break;
            case Variant::GlobalOptim:
                c.expect(a == kGlobalExact, fmt("global: %llu != %llu", (unsigned long long)a,
                                                (unsigned long long)kGlobalExact));
                break;
        }
    }

    const double deviation =
        std::abs(static_cast<double>(local_total) - static_cast<double>(kLocalPublished)) /
        static_cast<double>(kLocalPublished);
    c.expect(deviation <= kLocalPublishedTolerance,
             fmt("local %llu deviates %.2f%% from published %llu (limit %.1f%%)",
                 (unsigned long long)local_total, deviation * 100.0,
                 (unsigned long long)kLocalPublished, kLocalPublishedTolerance * 100.0));

    const double elapsed = seconds_since(start);
    c.expect(elapsed < kMaxSeconds, fmt("took %.2f s (limit %.0f s)", elapsed, kMaxSeconds));
    note = fmt("original 49152, local 19584 (%.1f%% from published 19200), global 12288, %.3f s",
               deviation * 100.0, elapsed);
    return c;
}

// --- criterion 2: speedup-limit and per-core-load regression -----------------
Criterion check_amdahl_regression(std::string& note) {
    constexpr double kLimitTolerance = 0.001;
    constexpr double kLoadToleranceK = 0.05;  // published loads carry 0.1k precision

    struct Row {
        double total, parallel, expected_limit, expected_load_k;
    };
    constexpr Row kRows[] = {
        {717200.0, 711500.0, 7.578, 88.9},
        {681800.0, 676100.0, 7.558, 84.5},
        {691300.0, 685600.0, 7.563, 85.7},
    };
    constexpr int kCores = 8;

    Criterion c;
    for (const Row& row : kRows) {
        const double limit = amdahl_limit({row.total, row.parallel, kCores});
        c.expect(std::abs(limit - row.expected_limit) <= kLimitTolerance,
                 fmt("limit(%g, %g, %d) = %.4f, expected %.3f +/- %.3f", row.total,
                     row.parallel, kCores, limit, row.expected_limit, kLimitTolerance));
        const double load_k = ideal_parallel_work(row.parallel, kCores) / 1000.0;
        c.expect(std::abs(load_k - row.expected_load_k) <= kLoadToleranceK,
                 fmt("per-core load %.3fk, expected %.1fk +/- %.2fk", load_k,
                     row.expected_load_k, kLoadToleranceK));
    }
    note = "limits 7.578/7.558/7.563 +/-0.001, per-core loads 88.9k/84.5k/85.7k +/-0.05k";
    return c;
}

// --- criterion 3: the three reuse strategies produce identical flows ---------
Criterion check_variant_equivalence(std::string& note) {
    constexpr int kPairs = 1000;
    constexpr double kMaxSeconds = 60.0;

    Criterion c;
    const auto start = Clock::now();
    for (std::uint64_t seed = 0; seed < kPairs && c.failures < 8; ++seed) {
        const auto [f1, f2] = generate_pair(seeded_spec(seed));
        const FlowResult base = compute_flow(f1, f2, variant_config(Variant::Original));
        for (Variant variant : {Variant::LocalOptim, Variant::GlobalOptim}) {
            const FlowResult other = compute_flow(f1, f2, variant_config(variant));
            c.expect(other.per_poi == base.per_poi,
                     fmt("seed %llu: per-POI flows differ (original vs %s)",
                         (unsigned long long)seed, variant_name(variant)));
            c.expect(other.global_flow == base.global_flow,
                     fmt("seed %llu: global flow differs (original vs %s)",
                         (unsigned long long)seed, variant_name(variant)));
        }
    }
    const double elapsed = seconds_since(start);
    c.expect(elapsed < kMaxSeconds, fmt("took %.1f s (limit %.0f s)", elapsed, kMaxSeconds));
    note = fmt("%d seeded pairs x 3 variants bitwise-equal, %.1f s", kPairs, elapsed);
    return c;
}

// --- criterion 4: engine matcher equals the independent reference matcher ----
Criterion check_oracle_equivalence(std::string& note) {
    constexpr int kPairs = 1000;

    Criterion c;
    const auto start = Clock::now();
    long long pois = 0;
    for (std::uint64_t seed = 0; seed < kPairs && c.failures < 8; ++seed) {
        const auto [f1, f2] = generate_pair(seeded_spec(seed + 100000));
        const FlowResult result = compute_flow(f1, f2, variant_config(Variant::LocalOptim));
        for (const PoiFlow& flow : result.per_poi) {
            const PoiFlow expected = oracle_match_poi(f1, f2, flow.anchor, default_config());
            c.expect(flow == expected,
                     fmt("seed %llu anchor (%d,%d): engine (%d,%d sad %u r%d) vs reference "
                         "(%d,%d sad %u r%d)",
                         (unsigned long long)(seed + 100000), flow.anchor.x, flow.anchor.y,
                         flow.dx_hp, flow.dy_hp, flow.best_sad, (int)flow.refined,
                         expected.dx_hp, expected.dy_hp, expected.best_sad,
                         (int)expected.refined));
            ++pois;
        }
    }
    note = fmt("%d pairs x 64 POIs (%lld matches) equal in displacement, sad, refined, %.1f s",
               kPairs, pois, seconds_since(start));
    return c;
}

// --- criterion 5: exact ground-truth recovery on noise-free pairs ------------
Criterion check_ground_truth_recovery(std::string& note) {
    constexpr std::uint64_t kSeed = 1;  // scanned clean for every half shift below

    Criterion c;
    // Every whole-pixel shift in [-4, 4]^2: exact flow, all scores zero.
    int whole_cases = 0;
    for (int sx = -4; sx <= 4; ++sx) {
        for (int sy = -4; sy <= 4; ++sy) {
            const auto [f1, f2] = generate_pair(
                SynthSpec{.shift_x_hp = 2 * sx, .shift_y_hp = 2 * sy, .seed = kSeed});
            const FlowResult result = compute_flow(f1, f2, default_config());
            c.expect(result.global_flow.fx == static_cast<double>(sx) &&
                         result.global_flow.fy == static_cast<double>(sy),
                     fmt("whole shift (%d,%d): flow (%.3f,%.3f)", sx, sy,
                         result.global_flow.fx, result.global_flow.fy));
            for (const PoiFlow& flow : result.per_poi) {
                c.expect(flow.best_sad == 0 && flow.dx_hp == 2 * sx && flow.dy_hp == 2 * sy &&
                             !flow.refined,
                         fmt("whole shift (%d,%d) POI (%d,%d): hp (%d,%d) sad %u refined %d",
                             sx, sy, flow.anchor.x, flow.anchor.y, flow.dx_hp, flow.dy_hp,
                             flow.best_sad, (int)flow.refined));
            }
            ++whole_cases;
        }
    }

    // Every single-axis half-pixel shift: exact half-pixel flow, refined.
    int half_cases = 0;
    for (int axis = 0; axis < 2; ++axis) {
        for (int s = -9; s <= 9; s += 2) {
            const int sx = axis == 0 ? s : 0;
            const int sy = axis == 0 ? 0 : s;
            const auto [f1, f2] =
                generate_pair(SynthSpec{.shift_x_hp = sx, .shift_y_hp = sy, .seed = kSeed});
            const FlowResult result = compute_flow(f1, f2, default_config());
            c.expect(result.global_flow.fx == sx / 2.0 && result.global_flow.fy == sy / 2.0,
                     fmt("half shift (%d,%d): flow (%.3f,%.3f)", sx, sy, result.global_flow.fx,
                         result.global_flow.fy));
            for (const PoiFlow& flow : result.per_poi) {
                c.expect(flow.refined && flow.dx_hp == sx && flow.dy_hp == sy &&
                             flow.best_sad == 0,
                         fmt("half shift (%d,%d) POI (%d,%d): hp (%d,%d) sad %u refined %d",
                             sx, sy, flow.anchor.x, flow.anchor.y, flow.dx_hp, flow.dy_hp,
                             flow.best_sad, (int)flow.refined));
            }
            ++half_cases;
        }
    }
    note = fmt("%d whole shifts exact with sad 0; %d single-axis half shifts exact and refined",
               whole_cases, half_cases);
    return c;
}

// --- criterion 6: results do not depend on the worker count ------------------
Criterion check_worker_invariance(std::string& note) {
    Criterion c;
    const auto [f1, f2] = generate_pair(
        SynthSpec{.shift_x_hp = -7, .shift_y_hp = 5, .noise_amplitude = 8, .seed = 33});
    for (Variant variant : {Variant::Original, Variant::LocalOptim, Variant::GlobalOptim}) {
        FlowConfig config = variant_config(variant);
        const FlowResult base = compute_flow(f1, f2, config);
        for (int workers : {2, 4, 8, 64}) {
            config.workers = workers;
            const FlowResult result = compute_flow(f1, f2, config);
            c.expect(result.per_poi == base.per_poi && result.global_flow == base.global_flow &&
                         result.counters == base.counters,
                     fmt("%s at %d workers differs from 1 worker", variant_name(variant),
                         workers));
        }
    }
    note = "workers {1,2,4,8,64} x 3 variants: per-POI flows, global flow, counters identical";
    return c;
}

// --- criterion 7: per-frame SAD workload --------------------------------------
Criterion check_sad_workload(std::string& note) {
    constexpr std::uint64_t kPerPoi = 89;    // 81 integer candidates + 8 half-pixel probes
    constexpr std::uint64_t kPerFrame = 5696;

    Criterion c;
    const auto [f1, f2] = generate_pair(
        SynthSpec{.shift_x_hp = 5, .shift_y_hp = -1, .noise_amplitude = 3, .seed = 2});
    for (Variant variant : {Variant::Original, Variant::LocalOptim, Variant::GlobalOptim}) {
        const FlowResult result = compute_flow(f1, f2, variant_config(variant));
        c.expect(result.counters.sad_evals == kPerFrame,
                 fmt("%s: %llu SAD evaluations, expected %llu", variant_name(variant),
                     (unsigned long long)result.counters.sad_evals,
                     (unsigned long long)kPerFrame));
    }
    c.expect(kPerFrame == 64 * kPerPoi, "frame total is not 64 x per-POI");
    note = "5696 SAD evaluations per frame (89 per POI x 64 POIs), all variants";
    return c;
}

// --- criterion 8: parallel speedup and bench-report model checks -------------
Criterion check_parallel_speedup(std::string& note) {
    constexpr double kMinSpeedupAt8 = 3.5;
    constexpr double kMonotoneSlack = 0.9;  // non-decreasing within 10% noise
    constexpr unsigned kRequiredThreads = 8;
    constexpr int kRepetitions = 9;

    Criterion c;
    const auto [f1, f2] = generate_pair(SynthSpec{.width = 192, .height = 192, .shift_x_hp = 5,
                                                  .shift_y_hp = -3, .noise_amplitude = 10,
                                                  .seed = 42});
    FlowConfig config = grid_config(192, 192, 16);
    config.variant = Variant::LocalOptim;

    std::vector<TimingSummary> summaries;
    for (int workers : {1, 2, 4, 8}) {
        config.workers = workers;
        summaries.push_back(run_phases_timed(f1, f2, config, kRepetitions));
    }

    // Unconditional: the bench report's model section must be computed from
    // the measured one-worker phase times, with efficiency = measured / limit.
    const nlohmann::json doc = bench_report(config, summaries);
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        const TimingSummary& s = summaries[i];
        const auto& entry = doc.at("entries").at(i);
        const double limit = amdahl_limit({static_cast<double>(s.baseline_total_ns),
                                           static_cast<double>(s.baseline_parallel_ns),
                                           s.workers});
        c.expect(limit >= 1.0 && limit <= static_cast<double>(s.workers) + 1e-9,
                 fmt("workers %d: modeled limit %.3f outside [1, %d]", s.workers, limit,
                     s.workers));
        c.expect(entry.at("amdahl").at("limit") == round3(limit),
                 fmt("workers %d: report limit %.3f != modeled %.3f", s.workers,
                     entry.at("amdahl").at("limit").get<double>(), round3(limit)));
        c.expect(entry.at("amdahl").at("measured_speedup") == round3(s.parallel_speedup),
                 fmt("workers %d: report speedup != measured", s.workers));
        c.expect(entry.at("amdahl").at("efficiency") == round3(s.parallel_speedup / limit),
                 fmt("workers %d: report efficiency %.3f != measured/limit %.3f", s.workers,
                     entry.at("amdahl").at("efficiency").get<double>(),
                     round3(s.parallel_speedup / limit)));
    }
    c.expect(summaries[0].parallel_speedup == 1.0, "one-worker speedup must be exactly 1");

    const unsigned threads = std::thread::hardware_concurrency();
    const double s2 = summaries[1].parallel_speedup;
    const double s4 = summaries[2].parallel_speedup;
    const double s8 = summaries[3].parallel_speedup;
    if (threads >= kRequiredThreads) {
        c.expect(s8 >= kMinSpeedupAt8,
                 fmt("parallel speedup at 8 workers %.2fx < %.1fx", s8, kMinSpeedupAt8));
        c.expect(s2 >= kMonotoneSlack && s4 >= kMonotoneSlack * s2,
                 fmt("speedups not monotone within 10%%: 1.00 -> %.2f -> %.2f", s2, s4));
        note = fmt("speedups 1.00/%.2f/%.2f/%.2f at 1/2/4/8 workers; report model verified",
                   s2, s4, s8);
    } else {
        note = fmt("speedup gates skipped: host has %u hardware thread(s), gate requires >= %u; "
                   "report model verified (speedups 1.00/%.2f/%.2f/%.2f)",
                   threads, kRequiredThreads, s2, s4, s8);
    }
    return c;
}

// --- criterion 9: image round-trip and distinct reader failures --------------
Criterion check_pgm_round_trip(std::string& note) {
    constexpr int kFrames = 100;

    Criterion c;
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "patchflow_acceptance.pgm";
    const int sizes[][2] = {{1, 1}, {64, 64}, {17, 3}, {31, 100}, {192, 192}, {2, 2}, {7, 5}};
    for (std::uint64_t seed = 0; seed < kFrames; ++seed) {
        const auto& wh = sizes[seed % (sizeof sizes / sizeof sizes[0])];
        Frame f(wh[0], wh[1]);
        SplitMix64 rng(seed + 12345);
        for (int y = 0; y < f.height(); ++y) {
            for (int x = 0; x < f.width(); ++x) {
                f.set(x, y, rng.next_byte());
            }
        }
        write_pgm(f, path.string());
        c.expect(read_pgm(path.string()) == f,
                 fmt("round-trip changed a %dx%d frame (seed %llu)", wh[0], wh[1],
                     (unsigned long long)seed));
    }

    const auto expect_error = [&](const std::string& bytes, const std::string& needle) {
        const auto bad = dir / "patchflow_acceptance_bad.pgm";
        std::ofstream(bad, std::ios::binary).write(bytes.data(), (std::streamsize)bytes.size());
        std::string message;
        try {
            read_pgm(bad.string());
        } catch (const std::exception& e) {
            message = e.what();
        }
        c.expect(message.find(needle) != std::string::npos,
                 fmt("expected reader error containing '%s', got '%s'", needle.c_str(),
                     message.c_str()));
        std::filesystem::remove(bad);
        return message;
    };

    std::vector<std::string> messages;
    messages.push_back(expect_error("P2\n1 1\n255\n7", "not a binary PGM"));
    messages.push_back(expect_error("P5\nabc 1\n255\n7", "malformed header"));
    messages.push_back(expect_error("P5\n1 1\n1023\n77", "unsupported maxval"));
    messages.push_back(expect_error("P5\n8 8\n255\nshort", "truncated"));
    try {
        read_pgm((dir / "patchflow_acceptance_missing" / "x.pgm").string());
        c.expect(false, "missing file did not raise");
    } catch (const std::exception& e) {
        messages.push_back(e.what());
        c.expect(messages.back().find("cannot open") != std::string::npos,
                 fmt("expected 'cannot open', got '%s'", e.what()));
    }
    for (std::size_t i = 0; i < messages.size(); ++i) {
        for (std::size_t j = i + 1; j < messages.size(); ++j) {
            c.expect(messages[i] != messages[j], "two failure modes share one message");
        }
    }
    std::filesystem::remove(path);
    note = fmt("%d frames round-tripped bit-exact; 5 reader failure modes, all distinct",
               kFrames);
    return c;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        Criterion (*run)(std::string&);
    };
    const Entry entries[] = {
        {"interpolation-count reproduction", check_interp_counts},
        {"speedup-limit regression", check_amdahl_regression},
        {"variant equivalence", check_variant_equivalence},
        {"reference-matcher equivalence", check_oracle_equivalence},
        {"ground-truth recovery", check_ground_truth_recovery},
        {"worker invariance", check_worker_invariance},
        {"SAD workload", check_sad_workload},
        {"parallel speedup", check_parallel_speedup},
        {"PGM round-trip", check_pgm_round_trip},
    };

    int failed = 0;
    int id = 0;
    for (const Entry& entry : entries) {
        ++id;
        std::string note;
        Criterion result;
        try {
            result = entry.run(note);
        } catch (const std::exception& e) {
            result.expect(false, fmt("unhandled exception: %s", e.what()));
        }
        if (result.passed()) {
            std::printf("[PASS] criterion %d: %s — %s\n", id, entry.name, note.c_str());
        } else {
            ++failed;
            std::printf("[FAIL] criterion %d: %s — %s%s\n", id, entry.name,
                        result.detail.c_str(),
                        result.failures > 1 ? fmt(" (+%d more)", result.failures - 1).c_str()
                                            : "");
        }
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed;
}
