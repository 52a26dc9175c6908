#pragma once

#include "conv_geometry.hpp"
#include "qconv/fastpath.hpp"
#include "qconv/op_counters.hpp"
#include "qconv/reference.hpp"
#include "qconv/requant.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace qconv::detail {

template <class Counter>
WidenedFilters widen_filters(const QWeights& w, Counter& counter) {
    WidenedFilters f;
    f.patch_length = static_cast<std::size_t>(w.kernel_h) * w.kernel_w * w.in_channels_per_group;
    f.count = w.out_channels;
    f.data.resize(f.patch_length * static_cast<std::size_t>(f.count));
    std::size_t idx = 0;
    for (int n = 0; n < w.out_channels; ++n)
        for (int i = 0; i < w.kernel_h; ++i)
            for (int j = 0; j < w.kernel_w; ++j)
                for (int m = 0; m < w.in_channels_per_group; ++m)
                    f.data[idx++] = w.data[w.offset(i, j, m, n)];
    counter.load(f.data.size());
    counter.store(f.data.size());
    return f;
}

/// Flattens the zero-padded receptive field at `pos` for the channels of `group`.
template <class Counter>
void fill_patch(std::span<std::int16_t> col, const QTensor& x, const ConvGeometry& g, int group,
                OutputPosition pos, Counter& counter) {
    const int r = g.radius();
    const int cin_g = g.in_per_group();
    const int c0 = group * cin_g;
    const auto xs = x.data();
    std::size_t idx = 0;
    std::uint64_t loads = 0;
    for (int i = 0; i < g.kernel; ++i) {
        const int ih = pos.h + i - r;
        for (int j = 0; j < g.kernel; ++j) {
            const int iw = pos.w + j - r;
            if (x.contains(ih, iw)) {
                const std::int8_t* xp = &xs[x.offset(ih, iw, c0)];
                for (int m = 0; m < cin_g; ++m)
                    col[idx++] = xp[m];
                loads += static_cast<std::uint64_t>(cin_g);
            } else {
                std::fill_n(col.begin() + static_cast<std::ptrdiff_t>(idx), cin_g, std::int16_t{0});
                idx += static_cast<std::size_t>(cin_g);
            }
        }
    }
    counter.load(loads);
    counter.store(idx);
}

template <class Counter>
void fill_shifted_patch(std::span<std::int16_t> col, const QTensor& x, const ShiftTable& table, OutputPosition pos,
                        Counter& counter) {
    const auto xs = x.data();
    std::uint64_t loads = 0;
    for (int m = 0; m < x.channels(); ++m) {
        const Shift s = table.shifts[static_cast<std::size_t>(m)];
        const int sh = pos.h + s.alpha;
        const int sw = pos.w + s.beta;
        if (x.contains(sh, sw)) {
            col[static_cast<std::size_t>(m)] = xs[x.offset(sh, sw, m)];
            ++loads;
        } else {
            col[static_cast<std::size_t>(m)] = 0;
        }
    }
    counter.load(loads);
    counter.store(static_cast<std::uint64_t>(x.channels()));
}

/// P patches x F filters of packed dot products. Each loaded word feeds every
/// accumulator in its row or column of the block.
template <int P, int F, class Counter>
void dot_block(const std::array<const std::int16_t*, 2>& cols, const std::array<const std::int16_t*, 2>& rows,
               std::size_t length, std::array<std::int32_t, 4>& acc, Counter& counter) {
    std::int32_t s[P][F] = {};
    std::size_t k = 0;
    for (; k + 1 < length; k += 2) {
        std::uint32_t a[P];
        std::uint32_t b[F];
        for (int p = 0; p < P; ++p)
            a[p] = read_q15x2(cols[static_cast<std::size_t>(p)] + k);
        for (int f = 0; f < F; ++f)
            b[f] = read_q15x2(rows[static_cast<std::size_t>(f)] + k);
        for (int p = 0; p < P; ++p)
            for (int f = 0; f < F; ++f)
                s[p][f] = smlad(a[p], b[f], s[p][f]);
    }
    if (k < length) {
        for (int p = 0; p < P; ++p)
            for (int f = 0; f < F; ++f)
                s[p][f] += static_cast<std::int32_t>(cols[static_cast<std::size_t>(p)][k]) *
                           rows[static_cast<std::size_t>(f)][k];
    }
    for (int p = 0; p < P; ++p)
        for (int f = 0; f < F; ++f)
            acc[static_cast<std::size_t>(p * 2 + f)] = s[p][f];
    counter.load(length * (P + F));
    counter.mul(length * P * F);
    counter.add_sub(length * P * F);
}

template <class Counter>
void dot_block(int patches, int filters, const std::array<const std::int16_t*, 2>& cols,
               const std::array<const std::int16_t*, 2>& rows, std::size_t length, std::array<std::int32_t, 4>& acc,
               Counter& counter) {
    if (patches == 2 && filters == 2)
        dot_block<2, 2>(cols, rows, length, acc, counter);
    else if (patches == 2)
        dot_block<2, 1>(cols, rows, length, acc, counter);
    else if (filters == 2)
        dot_block<1, 2>(cols, rows, length, acc, counter);
    else
        dot_block<1, 1>(cols, rows, length, acc, counter);
}

/// Shared im2col-GEMM driver. `fill(column, group, position)` writes one patch.
template <class Counter, class Fill>
QTensor im2col_gemm(const ConvGeometry& g, const QWeights& w, Counter& counter, Fill&& fill) {
    const int shift = conv_shift_output(g.dec_input, g.dec_weight, g.dec_output);
    const WidenedFilters filters = widen_filters(w, counter);
    const std::vector<std::int32_t>* bias = w.bias ? &*w.bias : nullptr;

    const int width = g.width;
    const int positions = width * width;
    const int cout_g = g.out_per_group();
    const std::size_t length = filters.patch_length;
    std::vector<std::int8_t> out(static_cast<std::size_t>(positions) * g.out_channels);
    Im2ColBuffer buf(length);

    for (int group = 0; group < g.groups; ++group) {
        const int n_begin = group * cout_g;
        const int n_end = n_begin + cout_g;
        for (int p0 = 0; p0 < positions; p0 += 2) {
            const int np = std::min(2, positions - p0);
            buf.clear();
            for (int q = 0; q < np; ++q)
                fill(buf.push_column(), group, OutputPosition{(p0 + q) / width, (p0 + q) % width});
            const std::array<const std::int16_t*, 2> cols{buf.column(0).data(),
                                                          np == 2 ? buf.column(1).data() : nullptr};
            for (int n0 = n_begin; n0 < n_end; n0 += 2) {
                const int nf = std::min(2, n_end - n0);
                const std::array<const std::int16_t*, 2> rows{filters.row(n0).data(),
                                                              nf == 2 ? filters.row(n0 + 1).data() : nullptr};
                std::array<std::int32_t, 4> acc{};
                dot_block(np, nf, cols, rows, length, acc, counter);
                for (int q = 0; q < np; ++q) {
                    for (int f = 0; f < nf; ++f) {
                        const int n = n0 + f;
                        std::int32_t b = 0;
                        if (bias) {
                            b = (*bias)[static_cast<std::size_t>(n)];
                            counter.load();
                            counter.add_sub();
                        }
                        out[static_cast<std::size_t>(p0 + q) * g.out_channels + n] =
                            requantize(acc[static_cast<std::size_t>(q * 2 + f)], b, shift);
                        counter.store();
                    }
                }
            }
        }
    }
    return QTensor(width, width, g.out_channels, g.dec_output, std::move(out));
}

template <class Counter>
QTensor conv_fast(const QTensor& x, const QWeights& w, const ConvGeometry& g, Counter& counter) {
    check_geometry(g);
    check_input(x, g);
    check_weights(w, g);
    return im2col_gemm(g, w, counter, [&](std::span<std::int16_t> col, int group, OutputPosition pos) {
        fill_patch(col, x, g, group, pos, counter);
    });
}

template <class Counter>
QTensor conv_shift_fast(const QTensor& x, const QWeights& w_pw, const ShiftTable& table, const LayerSpec& spec,
                        Counter& counter) {
    table.validate(spec.in_channels, spec.kernel);
    const ConvGeometry g = shift_pointwise_geometry(spec);
    check_geometry(g);
    check_input(x, g);
    check_weights(w_pw, g);
    return im2col_gemm(g, w_pw, counter, [&](std::span<std::int16_t> col, int, OutputPosition pos) {
        fill_shifted_patch(col, x, table, pos, counter);
    });
}

template <class Counter>
QTensor conv_dwsep_fast(const QTensor& x, const QWeights& w_dw, const QWeights& w_pw, const LayerSpec& spec,
                        Counter& counter) {
    if (spec.groups != spec.in_channels)
        throw ConfigError("depthwise separable: groups must equal in_channels");
    const QTensor mid = conv_fast(x, w_dw, spatial_geometry(spec), counter);
    return conv_fast(mid, w_pw, dwsep_pointwise_geometry(spec), counter);
}

} // namespace qconv::detail
