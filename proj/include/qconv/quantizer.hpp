#pragma once

#include "qconv/qtensor.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qconv {

/// Real-valued tensor with the same HWC layout as QTensor.
struct FloatTensor {
    int height = 1;
    int width = 1;
    int channels = 1;
    std::vector<double> data;

    std::size_t offset(int h, int w, int c) const noexcept {
        return (static_cast<std::size_t>(h) * static_cast<std::size_t>(width) +
                static_cast<std::size_t>(w)) *
                   static_cast<std::size_t>(channels) +
               static_cast<std::size_t>(c);
    }
};

/// Power-of-two scale exponent: ceil(log2(max |x|)), 0 for an all-zero input.
/// Throws DomainError on empty or non-finite data.
int choose_dec(std::span<const double> values);
int choose_dec(const FloatTensor& t);

/// floor(x * 2^(7 - dec)) saturated to [-128, 127]. Throws DomainError on non-finite x.
std::int8_t quantize_value(double x, int dec);

/// x * 2^(dec - 7).
double dequantize_value(std::int8_t x, int dec);

QTensor quantize(const FloatTensor& t, int dec);
FloatTensor dequantize(const QTensor& t);

/// Quantizes a bias directly to a 32-bit integer at accumulator scale, where
/// `accumulator_dec` is weight dec + input dec: floor(b * 2^(14 - accumulator_dec)),
/// saturated to the int32 range.
std::int32_t quantize_bias(double b, int accumulator_dec);

} // namespace qconv
