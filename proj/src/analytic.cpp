#include "jumpconv/analytic.hpp"

#include <stdexcept>

namespace jumpconv {

XPresetTraits traits(XPreset preset) {
    //                                conv   sq     abs    ->0    neg    pos    bdd    sli
    switch (preset) {
        case XPreset::zero:          return {true,  true,  true,  true,  false, false, true,  true};
        case XPreset::alt_sqrt:      return {true,  false, false, true,  true,  true,  false, false};
        case XPreset::ones:          return {false, false, false, false, false, true,  false, false};
        case XPreset::osc_harmonic:  return {false, true,  false, true,  true,  true,  false, false};
        case XPreset::exp_alt_sqrt:  return {false, false, false, true,  true,  true,  false, false};
        case XPreset::neg_harmonic:  return {false, true,  false, true,  true,  false, false, true};
        case XPreset::alt_harmonic:  return {true,  true,  false, true,  true,  true,  false, false};
        case XPreset::minus_half:    return {false, false, false, false, true,  false, false, true};
        case XPreset::bounded_alt:   return {true,  true,  true,  true,  true,  true,  true,  true};
        // A finite list: the walk is eventually constant.
        case XPreset::explicit_list: return {true,  true,  true,  true,  false, false, true,  true};
    }
    throw std::invalid_argument("unknown x preset");
}

}  // namespace jumpconv
