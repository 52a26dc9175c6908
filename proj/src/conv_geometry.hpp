#pragma once

#include "qconv/error.hpp"
#include "qconv/layer_spec.hpp"
#include "qconv/qtensor.hpp"

#include <string>

namespace qconv::detail {

/// Shape and exponents of a single convolution stage.
struct ConvGeometry {
    int width = 1;
    int in_channels = 1;
    int out_channels = 1;
    int kernel = 1;
    int groups = 1;
    int dec_input = 0;
    int dec_weight = 0;
    int dec_output = 0;

    int radius() const noexcept { return (kernel - 1) / 2; }
    int in_per_group() const noexcept { return in_channels / groups; }
    int out_per_group() const noexcept { return out_channels / groups; }
    int patch_length() const noexcept { return kernel * kernel * in_per_group(); }
};

inline ConvGeometry spatial_geometry(const LayerSpec& s) {
    return {s.input_width, s.in_channels,
            s.kind == PrimitiveKind::depthwise_separable ? s.in_channels : s.out_channels,
            s.kernel, s.groups, s.dec_input, s.dec_weight, s.dec_output};
}

/// 1x1 stage of depthwise separable convolution.
inline ConvGeometry dwsep_pointwise_geometry(const LayerSpec& s) {
    return {s.input_width, s.in_channels, s.out_channels, 1, 1,
            s.dec_output, s.pointwise_dec_weight, s.pointwise_dec_output};
}

/// 1x1 stage of shift convolution.
inline ConvGeometry shift_pointwise_geometry(const LayerSpec& s) {
    return {s.input_width, s.in_channels, s.out_channels, 1, 1,
            s.dec_input, s.dec_weight, s.dec_output};
}

inline void check_geometry(const ConvGeometry& g) {
    if (g.width <= 0 || g.in_channels <= 0 || g.out_channels <= 0 || g.kernel <= 0 || g.groups <= 0)
        throw ConfigError("convolution: dimensions must be positive");
    if (g.kernel % 2 == 0)
        throw ConfigError("convolution: kernel must be odd, got " + std::to_string(g.kernel));
    if (g.in_channels % g.groups != 0 || g.out_channels % g.groups != 0)
        throw ConfigError("convolution: groups " + std::to_string(g.groups) +
                          " must divide channel counts " + std::to_string(g.in_channels) + "/" +
                          std::to_string(g.out_channels));
    if (static_cast<long long>(g.patch_length()) > max_accumulation_terms)
        throw ConfigError("convolution: too many accumulation terms per output");
}

inline void check_input(const QTensor& x, const ConvGeometry& g) {
    if (x.height() != g.width || x.width() != g.width || x.channels() != g.in_channels)
        throw DimensionError("convolution: input shape " + std::to_string(x.height()) + "x" +
                             std::to_string(x.width()) + "x" + std::to_string(x.channels()) +
                             " does not match spec " + std::to_string(g.width) + "x" +
                             std::to_string(g.width) + "x" + std::to_string(g.in_channels));
    if (x.dec() != g.dec_input)
        throw ConfigError("convolution: input dec " + std::to_string(x.dec()) +
                          " differs from spec dec_input " + std::to_string(g.dec_input));
}

inline void check_weights(const QWeights& w, const ConvGeometry& g) {
    w.validate();
    if (w.kernel_h != g.kernel || w.kernel_w != g.kernel || w.in_channels_per_group != g.in_per_group() ||
        w.out_channels != g.out_channels)
        throw DimensionError("convolution: weight shape " + std::to_string(w.kernel_h) + "x" +
                             std::to_string(w.kernel_w) + "x" + std::to_string(w.in_channels_per_group) +
                             "x" + std::to_string(w.out_channels) + " does not match spec");
    if (w.dec != g.dec_weight)
        throw ConfigError("convolution: weight dec " + std::to_string(w.dec) +
                          " differs from spec dec_weight " + std::to_string(g.dec_weight));
}

} // namespace qconv::detail
