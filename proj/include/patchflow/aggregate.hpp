#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "patchflow/matcher.hpp"

namespace patchflow {

enum class Axis { X, Y };

// Histogram of per-POI displacements along one axis, in half-pixel units.
// Bin b counts the POIs displaced by exactly (b - kBias) half-pixels, so the
// 19 bins cover [-9, 9] — the full range reachable with a +/-4 integer
// search plus one half-pixel refinement step.
class FlowHistogram {
public:
    static constexpr int kBins = 19;
    static constexpr int kBias = 9;

    // Throws std::out_of_range when displacement_hp is outside [-9, 9].
    void add(int displacement_hp);

    std::uint32_t count(int bin) const;
    std::uint64_t total() const;

    // Lowest-index maximal bin (ties break toward the more negative
    // displacement). Meaningful only when total() > 0.
    int peak_bin() const;

    // Count-weighted mean displacement over the window [peak-2, peak+2]
    // clamped to the bin range, converted from half-pixels to pixels.
    // nullopt when the histogram is empty.
    std::optional<double> peak_refine() const;

private:
    std::array<std::uint32_t, kBins> bins_{};
    std::uint64_t total_ = 0;
};

// Frame-level flow in pixels, plus the number of POIs that contributed.
struct GlobalFlow {
    double fx = 0.0;
    double fy = 0.0;
    int contributing = 0;

    bool operator==(const GlobalFlow&) const = default;
};

FlowHistogram build_histogram(const std::vector<PoiFlow>& flows, Axis axis);

// Builds one histogram per axis and applies the windowed peak mean to each
// independently. Throws std::invalid_argument on an empty flow list.
GlobalFlow aggregate_flow(const std::vector<PoiFlow>& flows);

}  // namespace patchflow
