#pragma once

#include <cstdint>
#include <utility>

#include "patchflow/frame.hpp"
#include "patchflow/matcher.hpp"

namespace patchflow {

// splitmix64 (Steele, Lea & Flood's SplitMix fast path, the java.util
// SplittableRandom mixer): tiny, well-distributed, and defined purely in
// terms of 64-bit wrapping arithmetic, so seeded fixtures are identical on
// every platform and toolchain.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // High byte of next(): the best-mixed bits of the output word.
    std::uint8_t next_byte() { return static_cast<std::uint8_t>(next() >> 56); }

private:
    std::uint64_t state_;
};

// Recipe for a synthetic frame pair with known ground-truth displacement.
// Shifts are in half-pixel units and must stay within [-9, 9] per axis —
// the displacement range recoverable by the default +/-4 integer search
// plus one half-pixel refinement step.
struct SynthSpec {
    int width = 64;
    int height = 64;
    int shift_x_hp = 0;
    int shift_y_hp = 0;
    int noise_amplitude = 0;  // max |perturbation| per pixel, [0, 255]
    std::uint64_t seed = 0;
};

// Deterministically builds (frame1, frame2) so that frame2's content is
// frame1's translated by exactly (shift_x_hp/2, shift_y_hp/2) pixels under
// the engine's own rounding:
//
//   - a padded canvas (pad = default search radius + 2 per side) is filled
//     with seeded uniform bytes;
//   - frame2 is the canvas crop offset by the whole-pixel part of the shift;
//   - frame1 is the centered crop, sampled through the engine's exact
//     avg2/diag4 interpolation when the shift has half-pixel components, so
//     the matcher's corresponding half-pixel candidate sees a SAD of zero;
//   - optional uniform noise in [-amplitude, amplitude] is added to frame2,
//     clipped to [0, 255].
//
// Throws std::invalid_argument when `spec` violates the invariants above.
std::pair<Frame, Frame> generate_pair(const SynthSpec& spec);

// Brute-force reference matcher: evaluates all (2R+1)^2 integer candidates
// and all 8 half-pixel refinements with its own uncached arithmetic and the
// same tie-breaking contract as match_poi. If candidate_evals is non-null,
// it receives the number of candidate SADs evaluated (89 with defaults).
PoiFlow oracle_match_poi(const Frame& frame1, const Frame& frame2, PoiAnchor anchor,
                         const FlowConfig& config, int* candidate_evals = nullptr);

// Closed-form expected work counters for one full compute_flow run of the
// given variant: interpolation charges are content-independent because every
// refinement always evaluates all eight directions over the full patch.
WorkCounters oracle_interp_counts(const FlowConfig& config, Variant variant);

}  // namespace patchflow
