#include "patchflow/aggregate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace patchflow {

void FlowHistogram::add(int displacement_hp) {
    const int bin = displacement_hp + kBias;
    if (bin < 0 || bin >= kBins) {
        throw std::out_of_range("histogram: displacement " +
                                std::to_string(displacement_hp) +
                                " hp outside [-9, 9]");
    }
    ++bins_[static_cast<std::size_t>(bin)];
    ++total_;
}

std::uint32_t FlowHistogram::count(int bin) const {
    if (bin < 0 || bin >= kBins) {
        throw std::out_of_range("histogram: bin " + std::to_string(bin) +
                                " outside [0, 18]");
    }
    return bins_[static_cast<std::size_t>(bin)];
}

std::uint64_t FlowHistogram::total() const { return total_; }

int FlowHistogram::peak_bin() const {
    int best = 0;
    for (int b = 1; b < kBins; ++b) {
        if (bins_[static_cast<std::size_t>(b)] > bins_[static_cast<std::size_t>(best)]) {
            best = b;
        }
    }
    return best;
}

std::optional<double> FlowHistogram::peak_refine() const {
    if (total_ == 0) {
        return std::nullopt;
    }
    const int peak = peak_bin();
    const int lo = std::max(0, peak - 2);
    const int hi = std::min(kBins - 1, peak + 2);
    std::int64_t weighted = 0;
    std::uint64_t n = 0;
    for (int b = lo; b <= hi; ++b) {
        weighted += static_cast<std::int64_t>(bins_[static_cast<std::size_t>(b)]) *
                    (b - kBias);
        n += bins_[static_cast<std::size_t>(b)];
    }
    // n >= 1: the peak bin of a non-empty histogram is inside the window.
    return static_cast<double>(weighted) / (2.0 * static_cast<double>(n));
}

FlowHistogram build_histogram(const std::vector<PoiFlow>& flows, Axis axis) {
    FlowHistogram hist;
    for (const PoiFlow& flow : flows) {
        hist.add(axis == Axis::X ? flow.dx_hp : flow.dy_hp);
    }
    return hist;
}

GlobalFlow aggregate_flow(const std::vector<PoiFlow>& flows) {
    if (flows.empty()) {
        throw std::invalid_argument("aggregate_flow: empty flow list");
    }
    GlobalFlow global;
    global.fx = *build_histogram(flows, Axis::X).peak_refine();
    global.fy = *build_histogram(flows, Axis::Y).peak_refine();
    global.contributing = static_cast<int>(flows.size());
    return global;
}

}  // namespace patchflow
