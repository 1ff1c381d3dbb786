#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

// Coordinate convention used across the library: x is the column, y is the
// row, origin at the top-left pixel, y grows downward. Rasters are row-major.

namespace patchflow {

/// 8-bit grayscale raster. Immutable once filled; safe to share read-only
/// across threads.
class Frame {
public:
    Frame(int width, int height);
    Frame(int width, int height, std::vector<std::uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int x, int y) const {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)];
    }

    void set(int x, int y, std::uint8_t value) {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)] = value;
    }

    const std::vector<std::uint8_t>& data() const { return data_; }

    bool operator==(const Frame&) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> data_;
};

/// Interpolation-reuse strategy for the half-pixel refinement step.
enum class Variant {
    Original,     ///< recompute every half-pixel value on demand
    LocalOptim,   ///< cache unique values within the patch being refined
    GlobalOptim,  ///< precompute full-frame half-pixel planes up front
};

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

/// Top-left corner of a reference patch in the first frame.
struct PoiAnchor {
    int x = 0;
    int y = 0;
    bool operator==(const PoiAnchor&) const = default;
};

/// Geometry and execution parameters for one flow computation.
///
/// Anchors are patch top-left corners. Every anchor must keep the full
/// integer search window plus one extra pixel (for half-pixel interpolation)
/// inside the frame:  a - search_radius - 1 >= 0  and
/// a + patch - 1 + search_radius + 1 <= axis_length - 1.
struct FlowConfig {
    int width = 64;
    int height = 64;
    int patch = 8;
    int search_radius = 4;
    std::vector<int> poi_anchors_x;
    std::vector<int> poi_anchors_y;
    Variant variant = Variant::LocalOptim;
    int workers = 1;

    int poi_count() const {
        return static_cast<int>(poi_anchors_x.size() * poi_anchors_y.size());
    }

    /// Anchors in processing order: y outer, x inner.
    std::vector<PoiAnchor> anchors() const;

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// The stock configuration: 64x64 frame, 8x8 patches, +/-4 search, an 8x8
/// grid of anchors spaced 6 px apart, one worker, local-cache interpolation.
FlowConfig default_config();

/// Evenly spaced anchor grid for other frame sizes. Anchors are placed inside
/// the margins required by the search window; throws if the grid does not fit.
FlowConfig grid_config(int width, int height, int anchors_per_axis);

}  // namespace patchflow
