#pragma once

#include "conv_geometry.hpp"
#include "qconv/op_counters.hpp"
#include "qconv/reference.hpp"
#include "qconv/requant.hpp"

#include <cstdint>
#include <cstdlib>
#include <vector>

namespace qconv::detail {

// Scalar baseline: keep the compiler from vectorizing the reference loops.
#define QCONV_SCALAR [[gnu::optimize("no-tree-vectorize")]]

/// Literal multiply-accumulate convolution over the full (zero-padded) receptive field.
/// Padded taps still multiply, so the multiply count is data- and position-independent.
template <class Counter>
QCONV_SCALAR QTensor conv_reference(const QTensor& x, const QWeights& w, const ConvGeometry& g, Counter& counter) {
    check_geometry(g);
    check_input(x, g);
    check_weights(w, g);
    const int shift = conv_shift_output(g.dec_input, g.dec_weight, g.dec_output);

    const int width = g.width;
    const int r = g.radius();
    const int cin_g = g.in_per_group();
    const int cout_g = g.out_per_group();
    const auto xs = x.data();
    const std::int8_t* wd = w.data.data();
    const std::vector<std::int32_t>* bias = w.bias ? &*w.bias : nullptr;
    const auto stride = static_cast<std::size_t>(g.out_channels);
    const auto taps = static_cast<std::size_t>(g.kernel) * static_cast<std::size_t>(g.kernel);
    const std::vector<std::int8_t> zeros(static_cast<std::size_t>(g.in_channels), 0);
    // Per output pixel: base of each tap's channel run, or the zero row when padded.
    std::vector<const std::int8_t*> tap_base(taps);
    std::uint64_t inside_taps = 0;

    std::vector<std::int8_t> out(static_cast<std::size_t>(width) * width * g.out_channels);
    std::size_t o = 0;
    for (int oh = 0; oh < width; ++oh) {
        for (int ow = 0; ow < width; ++ow) {
            inside_taps = 0;
            for (int i = 0; i < g.kernel; ++i)
                for (int j = 0; j < g.kernel; ++j) {
                    const int ih = oh + i - r, iw = ow + j - r;
                    const bool inside = x.contains(ih, iw);
                    inside_taps += inside;
                    tap_base[static_cast<std::size_t>(i * g.kernel + j)] =
                        inside ? &xs[x.offset(ih, iw, 0)] : zeros.data();
                }
            for (int n = 0; n < g.out_channels; ++n, ++o) {
                const auto c0 = static_cast<std::size_t>((n / cout_g) * cin_g);
                std::int32_t acc = 0;
                const std::int8_t* wp = wd + n;
                for (std::size_t t = 0; t < taps; ++t) {
                    const std::int8_t* xp = tap_base[t] + c0;
                    for (int m = 0; m < cin_g; ++m, wp += stride)
                        acc += static_cast<std::int32_t>(xp[m]) * static_cast<std::int32_t>(*wp);
                }
                counter.load(static_cast<std::uint64_t>(cin_g) * (taps + inside_taps));
                counter.mul(static_cast<std::uint64_t>(cin_g) * taps);
                counter.add_sub(static_cast<std::uint64_t>(cin_g) * taps);
                std::int32_t b = 0;
                if (bias) {
                    b = (*bias)[static_cast<std::size_t>(n)];
                    counter.load();
                    counter.add_sub();
                }
                out[o] = requantize(acc, b, shift);
                counter.store();
            }
        }
    }
    return QTensor(width, width, g.out_channels, g.dec_output, std::move(out));
}

/// Negated L1 distance per receptive field, operands aligned by left shifts.
template <class Counter>
QCONV_SCALAR QTensor conv_add_reference(const QTensor& x, const QWeights& w, const ConvGeometry& g, Counter& counter) {
    check_geometry(g);
    check_input(x, g);
    check_weights(w, g);
    if (w.bias)
        throw ConfigError("conv_add: add convolution takes no bias; follow it with a QBN layer");
    const AddAlignment al = add_alignment(g.dec_input, g.dec_weight, g.dec_output);
    const long long max_term = 128LL * ((1LL << al.input_shift) + (1LL << al.weight_shift));
    if (max_term * g.patch_length() > INT32_MAX)
        throw ConfigError("conv_add: operand alignment shift would overflow the 32-bit accumulator");
    // At most one operand is scaled.
    const bool scale_input = al.input_shift > 0;
    const std::int32_t scale = std::int32_t{1} << (al.input_shift + al.weight_shift);

    const int width = g.width;
    const int r = g.radius();
    const int cin_g = g.in_per_group();
    const int cout_g = g.out_per_group();
    const auto xs = x.data();
    const std::int8_t* wd = w.data.data();
    const auto stride = static_cast<std::size_t>(g.out_channels);
    const auto taps = static_cast<std::size_t>(g.kernel) * static_cast<std::size_t>(g.kernel);
    const std::vector<std::int8_t> zeros(static_cast<std::size_t>(g.in_channels), 0);
    std::vector<const std::int8_t*> tap_base(taps);
    std::uint64_t inside_taps = 0;

    std::vector<std::int8_t> out(static_cast<std::size_t>(width) * width * g.out_channels);
    std::size_t o = 0;
    for (int oh = 0; oh < width; ++oh) {
        for (int ow = 0; ow < width; ++ow) {
            inside_taps = 0;
            for (int i = 0; i < g.kernel; ++i)
                for (int j = 0; j < g.kernel; ++j) {
                    const int ih = oh + i - r, iw = ow + j - r;
                    const bool inside = x.contains(ih, iw);
                    inside_taps += inside;
                    tap_base[static_cast<std::size_t>(i * g.kernel + j)] =
                        inside ? &xs[x.offset(ih, iw, 0)] : zeros.data();
                }
            for (int n = 0; n < g.out_channels; ++n, ++o) {
                const auto c0 = static_cast<std::size_t>((n / cout_g) * cin_g);
                std::int32_t acc = 0;
                const std::int8_t* wp = wd + n;
                for (std::size_t t = 0; t < taps; ++t) {
                    const std::int8_t* xp = tap_base[t] + c0;
                    if (scale_input) {
                        for (int m = 0; m < cin_g; ++m, wp += stride)
                            acc -= std::abs(xp[m] * scale - *wp);
                    } else {
                        for (int m = 0; m < cin_g; ++m, wp += stride)
                            acc -= std::abs(xp[m] - *wp * scale);
                    }
                }
                counter.load(static_cast<std::uint64_t>(cin_g) * (taps + inside_taps));
                counter.abs_op(static_cast<std::uint64_t>(cin_g) * taps);
                counter.add_sub(2 * static_cast<std::uint64_t>(cin_g) * taps);
                out[o] = shift_saturate(acc, al.shift_output);
                counter.store();
            }
        }
    }
    return QTensor(width, width, g.out_channels, g.dec_output, std::move(out));
}

template <class Counter>
QTensor shift_reference(const QTensor& x, const ShiftTable& table, Counter& counter) {
    if (table.shifts.size() != static_cast<std::size_t>(x.channels()))
        throw ConfigError("shift_op: table has " + std::to_string(table.shifts.size()) +
                          " entries for " + std::to_string(x.channels()) + " channels");
    const auto xs = x.data();
    std::vector<std::int8_t> out(x.size());
    std::size_t o = 0;
    std::uint64_t loads = 0;
    for (int h = 0; h < x.height(); ++h) {
        for (int w = 0; w < x.width(); ++w) {
            for (int m = 0; m < x.channels(); ++m, ++o) {
                const Shift s = table.shifts[static_cast<std::size_t>(m)];
                const int sh = h + s.alpha;
                const int sw = w + s.beta;
                if (x.contains(sh, sw)) {
                    out[o] = xs[x.offset(sh, sw, m)];
                    ++loads;
                }
            }
        }
    }
    counter.load(loads);
    counter.store(out.size());
    return QTensor(x.height(), x.width(), x.channels(), x.dec(), std::move(out));
}

template <class Counter>
QTensor dwsep_reference(const QTensor& x, const QWeights& w_dw, const QWeights& w_pw, const LayerSpec& spec,
                        Counter& counter) {
    if (spec.groups != spec.in_channels)
        throw ConfigError("depthwise separable: groups must equal in_channels");
    const QTensor mid = conv_reference(x, w_dw, spatial_geometry(spec), counter);
    return conv_reference(mid, w_pw, dwsep_pointwise_geometry(spec), counter);
}

template <class Counter>
QTensor conv_shift_reference(const QTensor& x, const QWeights& w_pw, const ShiftTable& table,
                             const LayerSpec& spec, Counter& counter) {
    table.validate(spec.in_channels, spec.kernel);
    const ConvGeometry g = shift_pointwise_geometry(spec);
    check_input(x, g);
    const QTensor shifted = shift_reference(x, table, counter);
    return conv_reference(shifted, w_pw, g, counter);
}

} // namespace qconv::detail
