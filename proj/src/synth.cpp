#include "patchflow/synth.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "patchflow/interp.hpp"

namespace patchflow {

namespace {

// Whole/half split of a half-pixel shift: s = 2*whole + half with
// half in {0, 1}; floor division keeps this true for negative shifts
// (e.g. -9 -> whole -5, half 1).
void split_shift(int shift_hp, int& whole, int& half) {
    whole = shift_hp >> 1;
    half = shift_hp & 1;
}

}  // namespace

std::pair<Frame, Frame> generate_pair(const SynthSpec& spec) {
    const FlowConfig defaults = default_config();
    const int pad = defaults.search_radius + 2;
    const int max_shift = 2 * defaults.search_radius + 1;

    if (spec.width < 1 || spec.height < 1) {
        throw std::invalid_argument("generate_pair: dimensions must be positive");
    }
    if (std::abs(spec.shift_x_hp) > max_shift || std::abs(spec.shift_y_hp) > max_shift) {
        throw std::invalid_argument("generate_pair: shift outside [-" +
                                    std::to_string(max_shift) + ", " +
                                    std::to_string(max_shift) + "] half-pixels");
    }
    if (spec.noise_amplitude < 0 || spec.noise_amplitude > 255) {
        throw std::invalid_argument("generate_pair: noise amplitude outside [0, 255]");
    }

    const int cw = spec.width + 2 * pad;
    const int ch = spec.height + 2 * pad;
    SplitMix64 rng(spec.seed);

    Frame canvas(cw, ch);
    for (int y = 0; y < ch; ++y) {
        for (int x = 0; x < cw; ++x) {
            canvas.set(x, y, rng.next_byte());
        }
    }

    int whole_x = 0, half_x = 0, whole_y = 0, half_y = 0;
    split_shift(spec.shift_x_hp, whole_x, half_x);
    split_shift(spec.shift_y_hp, whole_y, half_y);

    // frame1: centered crop, shifted into the half-pixel grid when the
    // ground truth has half-pixel components. Sampling uses the engine's
    // avg2/diag4 so a matcher candidate can reproduce these bytes exactly.
    Frame frame1(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const int cx = x + pad;
            const int cy = y + pad;
            std::uint8_t value;
            if (half_x == 0 && half_y == 0) {
                value = canvas.at(cx, cy);
            } else if (half_y == 0) {
                value = avg2(canvas.at(cx, cy), canvas.at(cx + 1, cy));
            } else if (half_x == 0) {
                value = avg2(canvas.at(cx, cy), canvas.at(cx, cy + 1));
            } else {
                value = diag4(canvas.at(cx, cy), canvas.at(cx + 1, cy),
                              canvas.at(cx, cy + 1), canvas.at(cx + 1, cy + 1));
            }
            frame1.set(x, y, value);
        }
    }

    // frame2: pure crop displaced by the whole-pixel part. |whole| <= 5 and
    // pad = 6, so the crop always stays inside the canvas.
    Frame frame2(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            frame2.set(x, y, canvas.at(x + pad - whole_x, y + pad - whole_y));
        }
    }

    if (spec.noise_amplitude > 0) {
        const std::uint64_t span = 2 * static_cast<std::uint64_t>(spec.noise_amplitude) + 1;
        for (int y = 0; y < spec.height; ++y) {
            for (int x = 0; x < spec.width; ++x) {
                const int delta =
                    static_cast<int>(rng.next() % span) - spec.noise_amplitude;
                const int noisy = std::clamp(frame2.at(x, y) + delta, 0, 255);
                frame2.set(x, y, static_cast<std::uint8_t>(noisy));
            }
        }
    }

    return {std::move(frame1), std::move(frame2)};
}

namespace {

// Independent half-pixel sample of `f` at (x + ddx/2, y + ddy/2), written
// straight from the bilinear definition (horizontal averages first) with
// round-half-up integer division at each stage.
int oracle_half_sample(const Frame& f, int x, int y, int ddx, int ddy) {
    const int x0 = x + (ddx < 0 ? -1 : 0);
    const int x1 = x + (ddx > 0 ? 1 : 0);
    const int y0 = y + (ddy < 0 ? -1 : 0);
    const int y1 = y + (ddy > 0 ? 1 : 0);
    const int top = (f.at(x0, y0) + f.at(x1, y0) + 1) / 2;
    const int bottom = (f.at(x0, y1) + f.at(x1, y1) + 1) / 2;
    if (ddy == 0) {
        return top;
    }
    return (top + bottom + 1) / 2;
}

std::uint32_t oracle_int_sad(const Frame& f1, const Frame& f2, PoiAnchor a, int dx,
                             int dy, int patch) {
    std::uint32_t acc = 0;
    for (int j = 0; j < patch; ++j) {
        for (int i = 0; i < patch; ++i) {
            const int d = f1.at(a.x + i, a.y + j) - f2.at(a.x + dx + i, a.y + dy + j);
            acc += static_cast<std::uint32_t>(d < 0 ? -d : d);
        }
    }
    return acc;
}

std::uint32_t oracle_half_sad(const Frame& f1, const Frame& f2, PoiAnchor a, int dx,
                              int dy, int ddx, int ddy, int patch) {
    std::uint32_t acc = 0;
    for (int j = 0; j < patch; ++j) {
        for (int i = 0; i < patch; ++i) {
            const int d = f1.at(a.x + i, a.y + j) -
                          oracle_half_sample(f2, a.x + dx + i, a.y + dy + j, ddx, ddy);
            acc += static_cast<std::uint32_t>(d < 0 ? -d : d);
        }
    }
    return acc;
}

}  // namespace

PoiFlow oracle_match_poi(const Frame& frame1, const Frame& frame2, PoiAnchor anchor,
                         const FlowConfig& config, int* candidate_evals) {
    const int radius = config.search_radius;
    const int patch = config.patch;
    int evals = 0;

    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    int best_dx = 0;
    int best_dy = 0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const std::uint32_t s = oracle_int_sad(frame1, frame2, anchor, dx, dy, patch);
            ++evals;
            if (s < best) {
                best = s;
                best_dx = dx;
                best_dy = dy;
            }
        }
    }

    static constexpr int kOffsets[8][2] = {
        {-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}, {1, -1}, {-1, 1}, {1, 1},
    };
    std::uint32_t best_half = best;
    int best_ddx = 0;
    int best_ddy = 0;
    bool refined = false;
    for (const auto& off : kOffsets) {
        const std::uint32_t s =
            oracle_half_sad(frame1, frame2, anchor, best_dx, best_dy, off[0], off[1], patch);
        ++evals;
        if (s < best_half) {
            best_half = s;
            best_ddx = off[0];
            best_ddy = off[1];
            refined = true;
        }
    }

    if (candidate_evals != nullptr) {
        *candidate_evals = evals;
    }

    PoiFlow flow;
    flow.anchor = anchor;
    flow.dx_int = best_dx;
    flow.dy_int = best_dy;
    flow.dx_hp = 2 * best_dx + best_ddx;
    flow.dy_hp = 2 * best_dy + best_ddy;
    flow.best_sad = best_half;
    flow.refined = refined;
    return flow;
}

WorkCounters oracle_interp_counts(const FlowConfig& config, Variant variant) {
    const std::uint64_t pois = static_cast<std::uint64_t>(config.poi_count());
    const std::uint64_t p = static_cast<std::uint64_t>(config.patch);
    const std::uint64_t radius = static_cast<std::uint64_t>(config.search_radius);
    const std::uint64_t pixels =
        static_cast<std::uint64_t>(config.width) * static_cast<std::uint64_t>(config.height);

    WorkCounters expected;
    switch (variant) {
        case Variant::Original:
            // 4 axis directions recompute patch^2 axis values (1 each);
            // 4 diagonal directions recompute patch^2 diagonals (2 / 3 raw).
            expected.interp_paper = pois * (4 * p * p + 4 * p * p * 2);
            expected.interp_raw = pois * (4 * p * p + 4 * p * p * 3);
            break;
        case Variant::LocalOptim:
            // Union of cells the eight shifted patches touch, each computed
            // once per POI: p*(p+1) horizontal + p*(p+1) vertical axis cells
            // and (p+1)^2 diagonal cells.
            expected.interp_paper = pois * (p * (p + 1) * 2 + (p + 1) * (p + 1) * 2);
            expected.interp_raw = pois * (p * (p + 1) * 2 + (p + 1) * (p + 1) * 3);
            break;
        case Variant::GlobalOptim:
            // One full-frame build of the three planes; diagonals compose
            // from the horizontal plane, so both counting conventions agree.
            expected.interp_paper = 3 * pixels;
            expected.interp_raw = 3 * pixels;
            break;
    }
    const std::uint64_t window = (2 * radius + 1) * (2 * radius + 1);
    expected.sad_evals = pois * (window + 8);
    return expected;
}

}  // namespace patchflow
