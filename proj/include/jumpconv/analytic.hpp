#pragma once

#include "jumpconv/spec.hpp"

namespace jumpconv {

// Symbolic facts about each closed-form x_n sequence, assuming a summable p_n that
// tends to zero. These are what the path-level proxies are compared against.
struct XPresetTraits {
    bool sum_converges;     // sum x_n converges
    bool sum_sq_finite;     // sum x_n^2 < inf
    bool sum_abs_finite;    // sum |x_n| < inf
    bool x_to_zero;         // x_n -> 0
    bool negative_io;       // x_n < 0 infinitely often (firing jumps -> +inf)
    bool positive_io;       // x_n > 0 infinitely often (firing jumps -> -inf)
    bool firing_bounded;    // firing jumps stay bounded
    // (dX)^- ∧ X^- stationarily locally integrable: decided per example, not from paths.
    bool neg_part_sli;
};

XPresetTraits traits(XPreset preset);

}  // namespace jumpconv
