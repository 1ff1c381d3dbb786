#pragma once

#include <cstdint>

#include "patchflow/frame.hpp"
#include "patchflow/interp.hpp"

namespace patchflow {

// Flow measured at one point of interest, in the frame's pixel coordinates.
//
// (dx_int, dy_int) is the winning integer displacement of the whole-pixel
// search; (dx_hp, dy_hp) is the final displacement in half-pixel units,
// i.e. 2 * integer displacement plus the winning refinement direction's
// offset (or exactly 2 * integer displacement when no direction improved).
struct PoiFlow {
    PoiAnchor anchor;
    int dx_int = 0;
    int dy_int = 0;
    int dx_hp = 0;
    int dy_hp = 0;
    std::uint32_t best_sad = 0;
    bool refined = false;

    bool operator==(const PoiFlow&) const = default;
};

// Sum of absolute differences between the patch of `ref` anchored at `a`
// and the patch of `cur` anchored at (a.x + dx, a.y + dy).
std::uint32_t sad(const Frame& ref, const Frame& cur, PoiAnchor a, int dx, int dy,
                  int patch);

// SAD between the reference patch at `a` and the half-pixel-shifted patch of
// the sampler's frame, anchored at (a.x + dx, a.y + dy) and shifted half a
// pixel toward `dir`. The caller must have issued begin_refinement for this
// base position first.
std::uint32_t sad_half(const Frame& ref, HalfPixelSampler& sampler, PoiAnchor a,
                       int dx, int dy, Direction dir, int patch);

// Full per-POI match: exhaustive integer search over the (2R+1)^2 window
// (row-major, y then x, ascending; the first strict minimum wins), then the
// eight half-pixel refinements in kRefinementOrder, each accepted only on
// strict improvement over the running best. Charges one sad_evals unit per
// SAD evaluation; interpolation work is charged by the sampler.
PoiFlow match_poi(const Frame& ref, const Frame& cur, PoiAnchor a,
                  const FlowConfig& config, HalfPixelSampler& sampler,
                  WorkCounters& counters);

}  // namespace patchflow
