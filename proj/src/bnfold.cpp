#include "qconv/bnfold.hpp"

#include "qconv/error.hpp"
#include "qconv/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qconv {

double BNParams::multiplier(std::size_t c) const { return gamma[c] / std::sqrt(var[c] + eps); }

void BNParams::validate() const {
    const auto n = gamma.size();
    if (beta.size() != n || mean.size() != n || var.size() != n)
        throw DimensionError("BNParams: gamma, beta, mean and var must have equal length");
    for (std::size_t c = 0; c < n; ++c)
        if (!(var[c] + eps > 0.0))
            throw DomainError("BNParams: var + eps must be positive (channel " + std::to_string(c) + ")");
}

FoldedConv fold_bn(const FloatWeights& w, std::span<const double> bias, const BNParams& bn) {
    bn.validate();
    if (bn.channels() != static_cast<std::size_t>(w.out_channels))
        throw DimensionError("fold_bn: weights have " + std::to_string(w.out_channels) + " output channels, BN has " +
                             std::to_string(bn.channels()));
    if (!bias.empty() && bias.size() != bn.channels())
        throw DimensionError("fold_bn: bias length must equal output channels");
    if (w.data.size() != static_cast<std::size_t>(w.kernel) * w.kernel * w.in_channels_per_group * w.out_channels)
        throw DimensionError("fold_bn: weight data length does not match shape");

    FoldedConv f{w, std::vector<double>(bn.channels())};
    const auto cout = static_cast<std::size_t>(w.out_channels);
    for (std::size_t i = 0; i < f.weights.data.size(); ++i)
        f.weights.data[i] *= bn.multiplier(i % cout);
    for (std::size_t n = 0; n < cout; ++n) {
        const double b = bias.empty() ? 0.0 : bias[n];
        f.bias[n] = bn.beta[n] + (b - bn.mean[n]) * bn.multiplier(n);
    }
    return f;
}

QBNLayer make_qbn(const BNParams& bn, int dec_input, int dec_output) {
    bn.validate();
    QBNLayer layer;
    layer.dec_input = dec_input;
    layer.dec_output = dec_output;
    for (std::size_t c = 0; c < bn.channels(); ++c) {
        const double a = bn.multiplier(c);
        const double b = bn.beta[c] - bn.mean[c] * a;
        const double av[] = {a};
        int dec = choose_dec(av);
        // Exact powers of two land on +128; one more exponent bit keeps them exact.
        if (std::floor(std::ldexp(a, 7 - dec)) > 127.0)
            ++dec;
        layer.scale.push_back(quantize_value(a, dec));
        layer.dec_scale.push_back(dec);
        // x * 2^(dec_input-7) * s * 2^(dec-7) expressed at 2^(dec_output-7).
        layer.shift.push_back(7 + dec_output - dec_input - dec);
        constexpr double lo = std::numeric_limits<std::int32_t>::min();
        constexpr double hi = std::numeric_limits<std::int32_t>::max();
        layer.offset.push_back(static_cast<std::int32_t>(std::clamp(std::floor(std::ldexp(b, 7 - dec_output)), lo, hi)));
    }
    return layer;
}

QTensor apply_qbn(const QTensor& x, const QBNLayer& layer) {
    if (static_cast<std::size_t>(x.channels()) != layer.channels() || layer.shift.size() != layer.channels() ||
        layer.offset.size() != layer.channels())
        throw DimensionError("apply_qbn: channel count mismatch");
    if (x.dec() != layer.dec_input)
        throw ConfigError("apply_qbn: input dec " + std::to_string(x.dec()) + " differs from layer dec_input " +
                          std::to_string(layer.dec_input));
    const auto src = x.data();
    std::vector<std::int8_t> out(src.size());
    const auto channels = layer.channels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const std::size_t c = i % channels;
        std::int64_t v = static_cast<std::int64_t>(src[i]) * layer.scale[c];
        const int s = layer.shift[c];
        if (s >= 0)
            v = s >= 63 ? (v < 0 ? -1 : 0) : (v >> s);
        else
            v *= std::int64_t{1} << std::min(-s, 31);
        v += layer.offset[c];
        out[i] = static_cast<std::int8_t>(std::clamp<std::int64_t>(v, -128, 127));
    }
    return QTensor(x.height(), x.width(), x.channels(), layer.dec_output, std::move(out));
}

} // namespace qconv
