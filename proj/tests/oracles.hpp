#pragma once

// Test-only oracles, written directly from the defining formulas and independent of
// the library's kernel code paths.

#include "qconv/bnfold.hpp"
#include "qconv/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

inline std::int64_t floor_div_pow2(std::int64_t v, int s) {
    return static_cast<std::int64_t>(std::floor(static_cast<double>(v) / std::ldexp(1.0, s)));
}

inline std::int8_t sat8(std::int64_t v) { return static_cast<std::int8_t>(std::clamp<std::int64_t>(v, -128, 127)); }

/// Direct grouped convolution, zero same-padding, flooring shift, int8 saturation.
/// x is HWC, w is (k, k, cin/groups, cout).
inline std::vector<std::int8_t> conv(const std::vector<std::int8_t>& x, int width, int cin,
                                     const std::vector<std::int8_t>& w, int k, int cout, int groups, int shift,
                                     const std::vector<std::int32_t>& bias = {}) {
    const int r = (k - 1) / 2;
    const int cg = cin / groups;
    const int og = cout / groups;
    std::vector<std::int8_t> y(static_cast<std::size_t>(width * width * cout));
    for (int h = 0; h < width; ++h)
        for (int v = 0; v < width; ++v)
            for (int n = 0; n < cout; ++n) {
                std::int64_t acc = 0;
                const int g = n / og;
                for (int m = 0; m < cg; ++m)
                    for (int i = 0; i < k; ++i)
                        for (int j = 0; j < k; ++j) {
                            const int sh = h + i - r, sv = v + j - r;
                            if (sh < 0 || sv < 0 || sh >= width || sv >= width)
                                continue;
                            acc += static_cast<std::int64_t>(x[static_cast<std::size_t>((sh * width + sv) * cin + g * cg + m)]) *
                                   w[static_cast<std::size_t>(((i * k + j) * cg + m) * cout + n)];
                        }
                if (!bias.empty())
                    acc += bias[static_cast<std::size_t>(n)];
                y[static_cast<std::size_t>((h * width + v) * cout + n)] = sat8(floor_div_pow2(acc, shift));
            }
    return y;
}

/// Negated L1 add convolution; the operand with the smaller exponent is left-shifted.
inline std::vector<std::int8_t> add_conv(const std::vector<std::int8_t>& x, int width, int cin,
                                         const std::vector<std::int8_t>& w, int k, int cout, int dec_in, int dec_w,
                                         int dec_out) {
    const int r = (k - 1) / 2;
    const int align = std::abs(dec_in - dec_w);
    const int shift_out = (dec_in > dec_w ? dec_in : dec_w) - dec_out;
    std::vector<std::int8_t> y(static_cast<std::size_t>(width * width * cout));
    for (int h = 0; h < width; ++h)
        for (int v = 0; v < width; ++v)
            for (int n = 0; n < cout; ++n) {
                std::int64_t acc = 0;
                for (int m = 0; m < cin; ++m)
                    for (int i = 0; i < k; ++i)
                        for (int j = 0; j < k; ++j) {
                            const int sh = h + i - r, sv = v + j - r;
                            const bool in = sh >= 0 && sv >= 0 && sh < width && sv < width;
                            std::int64_t xi = in ? x[static_cast<std::size_t>((sh * width + sv) * cin + m)] : 0;
                            std::int64_t wi = w[static_cast<std::size_t>(((i * k + j) * cin + m) * cout + n)];
                            if (dec_in > dec_w)
                                wi *= std::int64_t{1} << align;
                            else if (dec_in < dec_w)
                                xi *= std::int64_t{1} << align;
                            acc -= std::llabs(xi - wi);
                        }
                y[static_cast<std::size_t>((h * width + v) * cout + n)] = sat8(floor_div_pow2(acc, shift_out));
            }
    return y;
}

/// Real-valued same-padded convolution, groups == 1.
inline qconv::FloatTensor float_conv(const qconv::FloatTensor& x, const qconv::FloatWeights& w,
                                     const std::vector<double>& bias) {
    const int k = w.kernel, r = (k - 1) / 2, cout = w.out_channels;
    qconv::FloatTensor y{x.height, x.width, cout, std::vector<double>(static_cast<std::size_t>(x.height * x.width * cout))};
    for (int h = 0; h < x.height; ++h)
        for (int v = 0; v < x.width; ++v)
            for (int n = 0; n < cout; ++n) {
                double acc = bias.empty() ? 0.0 : bias[static_cast<std::size_t>(n)];
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) {
                        const int sh = h + i - r, sv = v + j - r;
                        if (sh < 0 || sv < 0 || sh >= x.height || sv >= x.width)
                            continue;
                        for (int m = 0; m < x.channels; ++m)
                            acc += x.data[x.offset(sh, sv, m)] * w.data[w.offset(i, j, m, n)];
                    }
                y.data[y.offset(h, v, n)] = acc;
            }
    return y;
}

/// gamma * (y - mean) / sqrt(var + eps) + beta per channel.
inline qconv::FloatTensor batch_norm(qconv::FloatTensor y, const qconv::BNParams& bn) {
    for (std::size_t i = 0; i < y.data.size(); ++i) {
        const std::size_t c = i % static_cast<std::size_t>(y.channels);
        y.data[i] = bn.gamma[c] * (y.data[i] - bn.mean[c]) / std::sqrt(bn.var[c] + bn.eps) + bn.beta[c];
    }
    return y;
}

inline std::vector<std::int8_t> random_i8(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-128, 127);
    std::vector<std::int8_t> v(n);
    for (auto& e : v)
        e = static_cast<std::int8_t>(d(rng));
    return v;
}

} // namespace oracle
