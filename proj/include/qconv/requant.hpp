#pragma once

#include <algorithm>
#include <cstdint>

namespace qconv {

/// Arithmetic (flooring) right shift of a wide accumulator, then saturation to int8.
inline std::int8_t shift_saturate(std::int64_t acc, int shift) noexcept {
    const std::int64_t shifted = shift >= 63 ? (acc < 0 ? -1 : 0) : (acc >> shift);
    return static_cast<std::int8_t>(std::clamp<std::int64_t>(shifted, -128, 127));
}

/// Output stage of the multiply-accumulate inner loop: add the (accumulator-scale) bias,
/// shift right by dec_weight + dec_input - dec_output and saturate.
inline std::int8_t requantize(std::int32_t acc, std::int32_t bias, int shift_output) noexcept {
    return shift_saturate(static_cast<std::int64_t>(acc) + bias, shift_output);
}

} // namespace qconv
