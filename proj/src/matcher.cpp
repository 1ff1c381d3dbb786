#include "patchflow/matcher.hpp"

#include <cstdlib>
#include <limits>

namespace patchflow {

std::uint32_t sad(const Frame& ref, const Frame& cur, PoiAnchor a, int dx, int dy,
                  int patch) {
    std::uint32_t acc = 0;
    for (int j = 0; j < patch; ++j) {
        for (int i = 0; i < patch; ++i) {
            const int r = ref.at(a.x + i, a.y + j);
            const int c = cur.at(a.x + dx + i, a.y + dy + j);
            acc += static_cast<std::uint32_t>(std::abs(r - c));
        }
    }
    return acc;
}

std::uint32_t sad_half(const Frame& ref, HalfPixelSampler& sampler, PoiAnchor a,
                       int dx, int dy, Direction dir, int patch) {
    std::uint32_t acc = 0;
    for (int j = 0; j < patch; ++j) {
        for (int i = 0; i < patch; ++i) {
            const int r = ref.at(a.x + i, a.y + j);
            const int c = sampler.sample(dir, a.x + dx + i, a.y + dy + j);
            acc += static_cast<std::uint32_t>(std::abs(r - c));
        }
    }
    return acc;
}

PoiFlow match_poi(const Frame& ref, const Frame& cur, PoiAnchor a,
                  const FlowConfig& config, HalfPixelSampler& sampler,
                  WorkCounters& counters) {
    const int radius = config.search_radius;
    const int patch = config.patch;

    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    int best_dx = 0;
    int best_dy = 0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const std::uint32_t s = sad(ref, cur, a, dx, dy, patch);
            ++counters.sad_evals;
            if (s < best) {
                best = s;
                best_dx = dx;
                best_dy = dy;
            }
        }
    }

    sampler.begin_refinement(a.x + best_dx, a.y + best_dy);
    std::uint32_t best_half = best;
    Direction best_dir = Direction::W;
    bool refined = false;
    for (Direction dir : kRefinementOrder) {
        const std::uint32_t s = sad_half(ref, sampler, a, best_dx, best_dy, dir, patch);
        ++counters.sad_evals;
        if (s < best_half) {
            best_half = s;
            best_dir = dir;
            refined = true;
        }
    }

    PoiFlow flow;
    flow.anchor = a;
    flow.dx_int = best_dx;
    flow.dy_int = best_dy;
    flow.dx_hp = 2 * best_dx + (refined ? dir_dx(best_dir) : 0);
    flow.dy_hp = 2 * best_dy + (refined ? dir_dy(best_dir) : 0);
    flow.best_sad = best_half;
    flow.refined = refined;
    return flow;
}

}  // namespace patchflow
