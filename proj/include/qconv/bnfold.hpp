#pragma once

#include "qconv/qtensor.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qconv {

/// Real-valued convolution weights, same (kernel, kernel, in_per_group, out) layout as QWeights.
struct FloatWeights {
    int kernel = 1;
    int in_channels_per_group = 1;
    int out_channels = 1;
    std::vector<double> data;

    std::size_t offset(int i, int j, int m, int n) const noexcept {
        return ((static_cast<std::size_t>(i) * static_cast<std::size_t>(kernel) + static_cast<std::size_t>(j)) *
                    static_cast<std::size_t>(in_channels_per_group) +
                static_cast<std::size_t>(m)) *
                   static_cast<std::size_t>(out_channels) +
               static_cast<std::size_t>(n);
    }
};

/// Inference-time batch normalization statistics, one entry per channel.
struct BNParams {
    std::vector<double> gamma;
    std::vector<double> beta;
    std::vector<double> mean;
    std::vector<double> var;
    double eps = 1e-5;

    std::size_t channels() const noexcept { return gamma.size(); }
    /// Per-channel multiplier gamma / sqrt(var + eps).
    double multiplier(std::size_t c) const;
    /// Throws DimensionError on ragged vectors, DomainError when var + eps <= 0.
    void validate() const;
};

struct FoldedConv {
    FloatWeights weights;
    std::vector<double> bias;
};

/// Merges BN into the preceding convolution in real arithmetic:
///   w'_n = w_n * a_n,  b'_n = beta_n + (b_n - mean_n) * a_n,  a_n = gamma_n / sqrt(var_n + eps).
/// An empty bias is read as zeros. Throws DimensionError on a channel mismatch.
FoldedConv fold_bn(const FloatWeights& w, std::span<const double> bias, const BNParams& bn);

/// Integer per-channel affine map used after add convolution, which cannot absorb BN.
///
/// y_c = saturate(((x * scale_c) >> shift_c) + offset_c). scale_c is an 8-bit multiplier
/// with exponent dec_scale_c; a negative shift_c is a left shift. offset_c sits at the
/// output scale.
struct QBNLayer {
    std::vector<std::int8_t> scale;
    std::vector<int> dec_scale;
    std::vector<int> shift;
    std::vector<std::int32_t> offset;
    int dec_input = 0;
    int dec_output = 0;

    std::size_t channels() const noexcept { return scale.size(); }
};

/// Quantizes the BN affine map for inputs at dec_input and outputs at dec_output.
QBNLayer make_qbn(const BNParams& bn, int dec_input, int dec_output);

/// Throws DimensionError on a channel mismatch, ConfigError if x.dec() != layer.dec_input.
QTensor apply_qbn(const QTensor& x, const QBNLayer& layer);

} // namespace qconv
