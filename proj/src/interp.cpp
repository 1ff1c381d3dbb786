#include "patchflow/interp.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace patchflow {

void HalfPixelSampler::begin_refinement(int, int) {}

HalfPixelPlanes build_planes(const Frame& frame, WorkCounters& counters) {
    const int w = frame.width();
    const int h = frame.height();
    HalfPixelPlanes planes(w, h);
    const std::uint64_t cells = static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(h);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int xr = std::min(x + 1, w - 1);
            planes.h_[planes.index(x, y)] = avg2(frame.at(x, y), frame.at(xr, y));
        }
    }
    counters.interp_paper += cells;
    counters.interp_raw += cells;

    for (int y = 0; y < h; ++y) {
        const int yd = std::min(y + 1, h - 1);
        for (int x = 0; x < w; ++x) {
            planes.v_[planes.index(x, y)] = avg2(frame.at(x, y), frame.at(x, yd));
        }
    }
    counters.interp_paper += cells;
    counters.interp_raw += cells;

    // Diagonal cells reuse the h plane: one fresh average per cell.
    for (int y = 0; y < h; ++y) {
        const int yd = std::min(y + 1, h - 1);
        for (int x = 0; x < w; ++x) {
            planes.d_[planes.index(x, y)] = avg2(planes.h(x, y), planes.h(x, yd));
        }
    }
    counters.interp_paper += cells;
    counters.interp_raw += cells;

    return planes;
}

namespace {

enum class PlaneKind : std::uint8_t { H, V, D };

struct PlaneCell {
    PlaneKind kind;
    int x;
    int y;
};

// Maps a (direction, pixel) pair to the unique plane cell holding its value.
PlaneCell plane_cell(Direction dir, int x, int y) {
    switch (dir) {
        case Direction::W:  return {PlaneKind::H, x - 1, y};
        case Direction::E:  return {PlaneKind::H, x, y};
        case Direction::N:  return {PlaneKind::V, x, y - 1};
        case Direction::S:  return {PlaneKind::V, x, y};
        case Direction::NW: return {PlaneKind::D, x - 1, y - 1};
        case Direction::NE: return {PlaneKind::D, x, y - 1};
        case Direction::SW: return {PlaneKind::D, x - 1, y};
        case Direction::SE: return {PlaneKind::D, x, y};
    }
    return {PlaneKind::H, x, y};
}

std::uint8_t compute_cell(const Frame& f, PlaneCell cell) {
    switch (cell.kind) {
        case PlaneKind::H:
            return avg2(f.at(cell.x, cell.y), f.at(cell.x + 1, cell.y));
        case PlaneKind::V:
            return avg2(f.at(cell.x, cell.y), f.at(cell.x, cell.y + 1));
        case PlaneKind::D:
            return diag4(f.at(cell.x, cell.y), f.at(cell.x + 1, cell.y),
                         f.at(cell.x, cell.y + 1), f.at(cell.x + 1, cell.y + 1));
    }
    return 0;
}

void charge_cell(PlaneKind kind, WorkCounters& counters) {
    if (kind == PlaneKind::D) {
        counters.interp_paper += 2;
        counters.interp_raw += 3;
    } else {
        counters.interp_paper += 1;
        counters.interp_raw += 1;
    }
}

class OriginalSampler final : public HalfPixelSampler {
public:
    OriginalSampler(const Frame& frame, WorkCounters& counters)
        : frame_(&frame), counters_(&counters) {}

    std::uint8_t sample(Direction dir, int x, int y) override {
        const PlaneCell cell = plane_cell(dir, x, y);
        charge_cell(cell.kind, *counters_);
        return compute_cell(*frame_, cell);
    }

private:
    const Frame* frame_;
    WorkCounters* counters_;
};

// Per-refinement cache of the unique half-pixel values the eight shifted
// patches can touch: (patch+1) x patch h cells, patch x (patch+1) v cells,
// (patch+1)^2 d cells, all indexed relative to (base_x - 1, base_y - 1).
class LocalCacheSampler final : public HalfPixelSampler {
public:
    LocalCacheSampler(const Frame& frame, int patch, WorkCounters& counters)
        : frame_(&frame), counters_(&counters), patch_(patch),
          h_((patch + 1) * patch), v_(patch * (patch + 1)),
          d_((patch + 1) * (patch + 1)) {}

    void begin_refinement(int base_x, int base_y) override {
        base_x_ = base_x;
        base_y_ = base_y;
        ++generation_;
    }

    std::uint8_t sample(Direction dir, int x, int y) override {
        const PlaneCell cell = plane_cell(dir, x, y);
        Entry& entry = slot(cell);
        if (entry.stamp != generation_) {
            charge_cell(cell.kind, *counters_);
            entry.value = compute_cell(*frame_, cell);
            entry.stamp = generation_;
        }
        return entry.value;
    }

private:
    struct Entry {
        std::uint8_t value = 0;
        std::uint64_t stamp = 0;
    };

    Entry& slot(PlaneCell cell) {
        switch (cell.kind) {
            case PlaneKind::H: {
                const int cx = cell.x - (base_x_ - 1);  // [0, patch]
                const int cy = cell.y - base_y_;        // [0, patch)
                assert(cx >= 0 && cx <= patch_ && cy >= 0 && cy < patch_);
                return h_[static_cast<std::size_t>(cy) * (patch_ + 1) + cx];
            }
            case PlaneKind::V: {
                const int cx = cell.x - base_x_;        // [0, patch)
                const int cy = cell.y - (base_y_ - 1);  // [0, patch]
                assert(cx >= 0 && cx < patch_ && cy >= 0 && cy <= patch_);
                return v_[static_cast<std::size_t>(cy) * patch_ + cx];
            }
            case PlaneKind::D:
            default: {
                const int cx = cell.x - (base_x_ - 1);  // [0, patch]
                const int cy = cell.y - (base_y_ - 1);  // [0, patch]
                assert(cx >= 0 && cx <= patch_ && cy >= 0 && cy <= patch_);
                return d_[static_cast<std::size_t>(cy) * (patch_ + 1) + cx];
            }
        }
    }

    const Frame* frame_;
    WorkCounters* counters_;
    int patch_;
    int base_x_ = 0;
    int base_y_ = 0;
    std::uint64_t generation_ = 0;
    std::vector<Entry> h_;
    std::vector<Entry> v_;
    std::vector<Entry> d_;
};

class GlobalPlanesSampler final : public HalfPixelSampler {
public:
    explicit GlobalPlanesSampler(const HalfPixelPlanes& planes) : planes_(&planes) {}

    // Pure lookup; the whole charge was paid in build_planes.
    std::uint8_t sample(Direction dir, int x, int y) override {
        const PlaneCell cell = plane_cell(dir, x, y);
        switch (cell.kind) {
            case PlaneKind::H: return planes_->h(cell.x, cell.y);
            case PlaneKind::V: return planes_->v(cell.x, cell.y);
            case PlaneKind::D: default: return planes_->d(cell.x, cell.y);
        }
    }

private:
    const HalfPixelPlanes* planes_;
};

}  // namespace

std::unique_ptr<HalfPixelSampler> make_sampler(Variant variant, const Frame& frame,
                                               const HalfPixelPlanes* planes, int patch,
                                               WorkCounters& counters) {
    switch (variant) {
        case Variant::Original:
            return std::make_unique<OriginalSampler>(frame, counters);
        case Variant::LocalOptim:
            return std::make_unique<LocalCacheSampler>(frame, patch, counters);
        case Variant::GlobalOptim:
            if (planes == nullptr) {
                throw std::invalid_argument("global variant requires prebuilt half-pixel planes");
            }
            return std::make_unique<GlobalPlanesSampler>(*planes);
    }
    throw std::invalid_argument("unknown variant");
}

}  // namespace patchflow
