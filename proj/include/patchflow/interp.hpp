#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include "patchflow/frame.hpp"

namespace patchflow {

/// Work accounting for one run. Counters only grow; per-worker instances are
/// summed after the parallel section.
///
/// interp_paper follows the counting convention of the reference operation
/// counts: one unit per axis half-pixel value, two units per diagonal value
/// computed from scratch (its two interpolation stages), one unit per
/// diagonal plane cell composed from an existing half-pixel plane.
/// interp_raw counts two-input averaging operations actually executed.
struct WorkCounters {
    std::uint64_t interp_paper = 0;
    std::uint64_t interp_raw = 0;
    std::uint64_t sad_evals = 0;

    WorkCounters& operator+=(const WorkCounters& other) {
        interp_paper += other.interp_paper;
        interp_raw += other.interp_raw;
        sad_evals += other.sad_evals;
        return *this;
    }

    bool operator==(const WorkCounters&) const = default;
};

/// Rounding rule for all half-pixel math: round-half-up integer average.
constexpr std::uint8_t avg2(std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>((static_cast<unsigned>(a) + static_cast<unsigned>(b) + 1u) >> 1);
}

/// Center of a 2x2 block. Always composed horizontal pairs first so every
/// code path produces bit-identical diagonals.
constexpr std::uint8_t diag4(std::uint8_t tl, std::uint8_t tr, std::uint8_t bl, std::uint8_t br) {
    return avg2(avg2(tl, tr), avg2(bl, br));
}

/// The eight half-pixel neighbors of a pixel, in refinement order.
enum class Direction : std::uint8_t { W = 0, E, N, S, NW, NE, SW, SE };

inline constexpr std::array<Direction, 8> kRefinementOrder = {
    Direction::W,  Direction::E,  Direction::N,  Direction::S,
    Direction::NW, Direction::NE, Direction::SW, Direction::SE,
};

/// Displacement of a direction in half-pixel units (y grows downward).
constexpr int dir_dx(Direction d) {
    switch (d) {
        case Direction::W: case Direction::NW: case Direction::SW: return -1;
        case Direction::E: case Direction::NE: case Direction::SE: return 1;
        default: return 0;
    }
}

constexpr int dir_dy(Direction d) {
    switch (d) {
        case Direction::N: case Direction::NW: case Direction::NE: return -1;
        case Direction::S: case Direction::SW: case Direction::SE: return 1;
        default: return 0;
    }
}

constexpr bool is_diagonal(Direction d) {
    return dir_dx(d) != 0 && dir_dy(d) != 0;
}

/// Full-frame precomputed half-pixel rasters (global variant).
///
/// h(x,y) sits between (x,y) and (x+1,y); v(x,y) between (x,y) and (x,y+1);
/// d(x,y) is the center of the 2x2 block whose top-left pixel is (x,y).
/// Border cells clamp the missing neighbor index; matching never reads them.
class HalfPixelPlanes {
public:
    HalfPixelPlanes(int width, int height)
        : width_(width), height_(height),
          h_(cell_count(), 0), v_(cell_count(), 0), d_(cell_count(), 0) {}

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t h(int x, int y) const { return h_[index(x, y)]; }
    std::uint8_t v(int x, int y) const { return v_[index(x, y)]; }
    std::uint8_t d(int x, int y) const { return d_[index(x, y)]; }

private:
    friend HalfPixelPlanes build_planes(const Frame& frame, WorkCounters& counters);

    std::size_t cell_count() const {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    std::size_t index(int x, int y) const {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> h_;
    std::vector<std::uint8_t> v_;
    std::vector<std::uint8_t> d_;
};

/// Computes all three planes for a frame. The diagonal plane is composed from
/// h-plane rows, so the charge is exactly 3*width*height in both conventions.
HalfPixelPlanes build_planes(const Frame& frame, WorkCounters& counters);

/// Source of half-pixel values during refinement. One instance per worker;
/// not thread-safe across workers.
class HalfPixelSampler {
public:
    virtual ~HalfPixelSampler() = default;

    /// Announces the integer base position of the next refinement. The local
    /// variant resets its cache here; the others ignore it.
    virtual void begin_refinement(int base_x, int base_y);

    /// Half-pixel value half a step from (x, y) toward dir. (x, y) must be
    /// inside the interpolation margins.
    virtual std::uint8_t sample(Direction dir, int x, int y) = 0;
};

/// Builds the sampler for a variant. `frame` is the frame being searched
/// (frame n+1). GlobalOptim requires prebuilt planes; the others ignore them.
/// `patch` sizes the local cache. Charges accrue to `counters`.
std::unique_ptr<HalfPixelSampler> make_sampler(Variant variant, const Frame& frame,
                                               const HalfPixelPlanes* planes, int patch,
                                               WorkCounters& counters);

}  // namespace patchflow
