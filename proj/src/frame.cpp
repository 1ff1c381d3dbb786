#include "patchflow/frame.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace patchflow {

namespace {

void check_dimensions(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("frame dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

Frame::Frame(int width, int height) : width_(width), height_(height) {
    check_dimensions(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

Frame::Frame(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dimensions(width, height);
    const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (data_.size() != expected) {
        throw std::invalid_argument("frame data length " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Original: return "original";
        case Variant::LocalOptim: return "local";
        case Variant::GlobalOptim: return "global";
    }
    return "unknown";
}

std::optional<Variant> variant_from_name(std::string_view name) {
    if (name == "original") return Variant::Original;
    if (name == "local") return Variant::LocalOptim;
    if (name == "global") return Variant::GlobalOptim;
    return std::nullopt;
}

std::vector<PoiAnchor> FlowConfig::anchors() const {
    std::vector<PoiAnchor> out;
    out.reserve(poi_anchors_x.size() * poi_anchors_y.size());
    for (int y : poi_anchors_y) {
        for (int x : poi_anchors_x) {
            out.push_back({x, y});
        }
    }
    return out;
}

void FlowConfig::validate() const {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("config: frame dimensions must be positive");
    }
    if (patch <= 0) {
        throw std::invalid_argument("config: patch size must be positive");
    }
    if (search_radius < 0) {
        throw std::invalid_argument("config: search radius must be non-negative");
    }
    if (workers < 1) {
        throw std::invalid_argument("config: worker count must be >= 1");
    }
    if (poi_anchors_x.empty() || poi_anchors_y.empty()) {
        throw std::invalid_argument("config: anchor lists must be non-empty");
    }
    // Integer search plus half-pixel interpolation must never read out of
    // bounds: a - R - 1 >= 0 and a + patch - 1 + R + 1 <= len - 1.
    auto check_axis = [&](const std::vector<int>& anchors, int len, const char* axis) {
        for (int a : anchors) {
            if (a - search_radius - 1 < 0 || a + patch + search_radius > len - 1) {
                throw std::invalid_argument(std::string("config: anchor ") + std::to_string(a) +
                                            " on " + axis + " violates the margin inequality");
            }
        }
    };
    check_axis(poi_anchors_x, width, "x");
    check_axis(poi_anchors_y, height, "y");
}

FlowConfig default_config() {
    FlowConfig cfg;
    cfg.width = 64;
    cfg.height = 64;
    cfg.patch = 8;
    cfg.search_radius = 4;
    cfg.poi_anchors_x = {8, 14, 20, 26, 32, 38, 44, 50};
    cfg.poi_anchors_y = cfg.poi_anchors_x;
    cfg.variant = Variant::LocalOptim;
    cfg.workers = 1;
    return cfg;
}

FlowConfig grid_config(int width, int height, int anchors_per_axis) {
    if (anchors_per_axis < 1) {
        throw std::invalid_argument("grid_config: need at least one anchor per axis");
    }
    FlowConfig cfg;
    cfg.width = width;
    cfg.height = height;
    auto make_axis = [&](int len) {
        const int lo = cfg.search_radius + 1;
        const int hi = len - cfg.patch - cfg.search_radius - 1;
        if (hi < lo) {
            throw std::invalid_argument("grid_config: frame too small for the search window");
        }
        std::vector<int> anchors;
        if (anchors_per_axis == 1) {
            anchors.push_back(lo + (hi - lo) / 2);
            return anchors;
        }
        const int step = (hi - lo) / (anchors_per_axis - 1);
        if (step < 1) {
            throw std::invalid_argument("grid_config: too many anchors for this frame size");
        }
        const int start = lo + ((hi - lo) - step * (anchors_per_axis - 1)) / 2;
        for (int i = 0; i < anchors_per_axis; ++i) {
            anchors.push_back(start + i * step);
        }
        return anchors;
    };
    cfg.poi_anchors_x = make_axis(width);
    cfg.poi_anchors_y = make_axis(height);
    cfg.validate();
    return cfg;
}

}  // namespace patchflow
