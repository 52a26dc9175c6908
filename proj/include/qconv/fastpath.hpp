#pragma once

// im2col + GEMM kernels in the style of CMSIS-NN: at most two input patches are
// flattened into a 16-bit column buffer at a time, each buffer fill is multiplied
// against two filters at once, and the inner product advances two terms per step
// through a packed dual 16x16->32 multiply-accumulate. Outputs are bit-identical
// to the reference kernels. Add convolution has no fast path.

#include "qconv/layer_spec.hpp"
#include "qconv/qtensor.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace qconv {

/// Two signed 16-bit lanes in one 32-bit word, first element in the low half.
inline std::uint32_t pack_q15x2(std::int16_t lo, std::int16_t hi) noexcept {
    return static_cast<std::uint16_t>(lo) | (static_cast<std::uint32_t>(static_cast<std::uint16_t>(hi)) << 16);
}

/// Reads two adjacent 16-bit values as one packed word.
inline std::uint32_t read_q15x2(const std::int16_t* p) noexcept {
    std::uint32_t v;
    std::memcpy(&v, p, sizeof v);
    return v;
}

/// Dual signed multiply-accumulate: acc + lo(x)*lo(y) + hi(x)*hi(y), no saturation.
inline std::int32_t smlad(std::uint32_t x, std::uint32_t y, std::int32_t acc) noexcept {
    const auto xl = static_cast<std::int16_t>(x & 0xFFFFu);
    const auto xh = static_cast<std::int16_t>(x >> 16);
    const auto yl = static_cast<std::int16_t>(y & 0xFFFFu);
    const auto yh = static_cast<std::int16_t>(y >> 16);
    return acc + static_cast<std::int32_t>(xl) * yl + static_cast<std::int32_t>(xh) * yh;
}

inline std::int32_t dual_mac(std::int32_t acc, std::int16_t a0, std::int16_t a1, std::int16_t b0,
                             std::int16_t b1) noexcept {
    return smlad(pack_q15x2(a0, a1), pack_q15x2(b0, b1), acc);
}

struct OutputPosition {
    int h = 0;
    int w = 0;
};

/// Scratch column buffer holding at most two flattened, 16-bit widened patches.
class Im2ColBuffer {
public:
    static constexpr int max_patches = 2;

    explicit Im2ColBuffer(std::size_t patch_length)
        : patch_length_(patch_length), storage_(patch_length * max_patches) {}

    std::size_t patch_length() const noexcept { return patch_length_; }
    int valid_count() const noexcept { return valid_; }
    std::size_t capacity() const noexcept { return storage_.size(); }

    std::span<const std::int16_t> column(int i) const;

    void clear() noexcept { valid_ = 0; }
    /// Appends an uninitialized column and returns it for filling; throws ContractError when full.
    std::span<std::int16_t> push_column();

private:
    std::size_t patch_length_;
    int valid_ = 0;
    std::vector<std::int16_t> storage_;
};

/// Zero-padded receptive fields of up to two output positions, in (kernel row,
/// kernel col, channel) order, restricted to the channels of `group`.
/// Throws ContractError for more than two positions.
Im2ColBuffer im2col_patches(const QTensor& x, const LayerSpec& spec, std::span<const OutputPosition> positions,
                            int group = 0);

/// Pointwise patches after a per-channel shift: entry m is x(h + alpha_m, w + beta_m, m),
/// zero when outside the input.
Im2ColBuffer im2col_patches_shifted(const QTensor& x, const LayerSpec& spec, const ShiftTable& table,
                                    std::span<const OutputPosition> positions);

/// Filters flattened to rows in column order and widened to 16 bits.
struct WidenedFilters {
    std::size_t patch_length = 0;
    int count = 0;
    std::vector<std::int16_t> data;

    std::span<const std::int16_t> row(int n) const {
        return {data.data() + static_cast<std::size_t>(n) * patch_length, patch_length};
    }
};

/// Row n holds filter n's taps over the input channels of its own group.
WidenedFilters widen_filters(const QWeights& w);

struct Requantization {
    int shift_output = 0;
    std::span<const std::int32_t> bias; // empty when the layer has no bias
};

/// Result of one (patch, filter) block; index with p * 2 + f.
struct GemmBlock {
    int patches = 0;
    int filters = 0;
    std::array<std::int32_t, 4> acc{};
    std::array<std::int8_t, 4> out{};

    std::int32_t accumulator(int p, int f) const { return acc[static_cast<std::size_t>(p * 2 + f)]; }
    std::int8_t output(int p, int f) const { return out[static_cast<std::size_t>(p * 2 + f)]; }
};

/// Dot products of every buffered patch with one or two filters, two terms per packed
/// step plus a scalar tail for odd lengths, then bias and requantization.
/// Throws DimensionError on a length mismatch and ContractError on a bad filter list.
GemmBlock gemm_2x2_packed(const Im2ColBuffer& buf, const WidenedFilters& filters,
                          std::span<const int> filter_pair, const Requantization& rq);

QTensor conv_standard_fast(const QTensor& x, const QWeights& w, const LayerSpec& spec);
/// im2col-GEMM applied to each group independently.
QTensor conv_grouped_fast(const QTensor& x, const QWeights& w, const LayerSpec& spec);
/// Shifted im2col feeding the pointwise GEMM; the shifted map is never materialized.
QTensor conv_shift_fast(const QTensor& x, const QWeights& w_pointwise, const ShiftTable& table,
                        const LayerSpec& spec);
QTensor conv_dwsep_fast(const QTensor& x, const QWeights& w_depthwise, const QWeights& w_pointwise,
                        const LayerSpec& spec);

} // namespace qconv
