#pragma once

// Scalar reference implementations of the convolution primitives. Every kernel
// runs at stride 1 with zero same-padding, accumulates in 32 bits and requantizes
// with a flooring right shift followed by int8 saturation. These define correctness
// for the optimized kernels in fastpath.hpp.

#include "qconv/layer_spec.hpp"
#include "qconv/qtensor.hpp"

namespace qconv {

/// Output shift of the multiply-accumulate primitives: dec_weight + dec_input - dec_output.
/// Throws ConfigError when negative.
int conv_shift_output(int dec_input, int dec_weight, int dec_output);

/// Operand alignment of add convolution. The operand with the smaller exponent is
/// shifted left by |dec_input - dec_weight| and the output shift is
/// max(dec_input, dec_weight) - dec_output.
struct AddAlignment {
    int input_shift = 0;
    int weight_shift = 0;
    int shift_output = 0;
};
/// Throws ConfigError when the output shift would be negative.
AddAlignment add_alignment(int dec_input, int dec_weight, int dec_output);

/// Standard convolution, groups == 1. Weights are (kernel, kernel, in_channels, out_channels).
QTensor conv_standard(const QTensor& x, const QWeights& w, const LayerSpec& spec);

/// Output channel n of group g only reads the in_channels / groups inputs of group g.
/// Weights are (kernel, kernel, in_channels / groups, out_channels).
QTensor conv_grouped(const QTensor& x, const QWeights& w, const LayerSpec& spec);

/// Depthwise stage (groups == in_channels, exponent spec.dec_output) followed by a
/// 1x1 pointwise stage (spec.pointwise_dec_weight -> spec.pointwise_dec_output).
QTensor conv_depthwise_separable(const QTensor& x, const QWeights& w_depthwise,
                                 const QWeights& w_pointwise, const LayerSpec& spec);

/// Per-channel spatial translation; vacated positions are zero. Output keeps x's dec.
QTensor shift_op(const QTensor& x, const ShiftTable& table);

/// shift_op followed by a 1x1 pointwise convolution (dec_input -> dec_output via dec_weight).
QTensor conv_shift(const QTensor& x, const QWeights& w_pointwise, const ShiftTable& table,
                   const LayerSpec& spec);

/// Negated L1 distance between each receptive field and filter. Padded positions take
/// part as zeros. Outputs are never positive; a bias is rejected.
QTensor conv_add(const QTensor& x, const QWeights& w, const LayerSpec& spec);

} // namespace qconv
