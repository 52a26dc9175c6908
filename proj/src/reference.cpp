#include "qconv/reference.hpp"

#include "ref_kernels.hpp"

#include <algorithm>
#include <cstdlib>

namespace qconv {

int conv_shift_output(int dec_input, int dec_weight, int dec_output) {
    const int shift = dec_weight + dec_input - dec_output;
    if (shift < 0)
        throw ConfigError("negative output shift: dec_output " + std::to_string(dec_output) +
                          " exceeds dec_weight + dec_input = " + std::to_string(dec_weight + dec_input));
    return shift;
}

AddAlignment add_alignment(int dec_input, int dec_weight, int dec_output) {
    AddAlignment a;
    const int diff = std::abs(dec_input - dec_weight);
    if (dec_input > dec_weight)
        a.weight_shift = diff;
    else if (dec_input < dec_weight)
        a.input_shift = diff;
    a.shift_output = std::max(dec_input, dec_weight) - dec_output;
    if (a.shift_output < 0)
        throw ConfigError("add convolution: negative output shift for dec_output " + std::to_string(dec_output));
    return a;
}

QTensor conv_standard(const QTensor& x, const QWeights& w, const LayerSpec& spec) {
    if (spec.groups != 1)
        throw ConfigError("conv_standard: groups must be 1");
    NullCounter c;
    return detail::conv_reference(x, w, detail::spatial_geometry(spec), c);
}

QTensor conv_grouped(const QTensor& x, const QWeights& w, const LayerSpec& spec) {
    NullCounter c;
    return detail::conv_reference(x, w, detail::spatial_geometry(spec), c);
}

QTensor conv_depthwise_separable(const QTensor& x, const QWeights& w_depthwise, const QWeights& w_pointwise,
                                 const LayerSpec& spec) {
    NullCounter c;
    return detail::dwsep_reference(x, w_depthwise, w_pointwise, spec, c);
}

QTensor shift_op(const QTensor& x, const ShiftTable& table) {
    NullCounter c;
    return detail::shift_reference(x, table, c);
}

QTensor conv_shift(const QTensor& x, const QWeights& w_pointwise, const ShiftTable& table, const LayerSpec& spec) {
    NullCounter c;
    return detail::conv_shift_reference(x, w_pointwise, table, spec, c);
}

QTensor conv_add(const QTensor& x, const QWeights& w, const LayerSpec& spec) {
    if (spec.groups != 1)
        throw ConfigError("conv_add: groups must be 1");
    NullCounter c;
    return detail::conv_add_reference(x, w, detail::spatial_geometry(spec), c);
}

} // namespace qconv
