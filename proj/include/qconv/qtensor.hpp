#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qconv {

/// 8-bit tensor in height x width x channel (channel-last) order.
///
/// Element e represents the real value e * 2^(dec - 7). Immutable once built.
class QTensor {
public:
    QTensor(int height, int width, int channels, int dec, std::vector<std::int8_t> data);

    /// Zero-filled tensor.
    static QTensor zeros(int height, int width, int channels, int dec);

    int height() const noexcept { return height_; }
    int width() const noexcept { return width_; }
    int channels() const noexcept { return channels_; }
    int dec() const noexcept { return dec_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<const std::int8_t> data() const noexcept { return data_; }

    /// Flat offset of (h, w, c); no bounds checking.
    std::size_t offset(int h, int w, int c) const noexcept {
        return (static_cast<std::size_t>(h) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(w)) *
                   static_cast<std::size_t>(channels_) +
               static_cast<std::size_t>(c);
    }

    /// Checked element access; throws BoundsError.
    std::int8_t at(int h, int w, int c) const;

    bool contains(int h, int w) const noexcept {
        return h >= 0 && h < height_ && w >= 0 && w < width_;
    }

    friend bool operator==(const QTensor&, const QTensor&) = default;

private:
    int height_;
    int width_;
    int channels_;
    int dec_;
    std::vector<std::int8_t> data_;
};

/// Free-function spelling of QTensor::at.
inline std::int8_t index(const QTensor& t, int h, int w, int c) { return t.at(h, w, c); }

/// Convolution weights in (kernel_h, kernel_w, in_channels_per_group, out_channels) order.
///
/// The optional bias lives at accumulator scale (dec + input dec) as 32-bit integers.
struct QWeights {
    int kernel_h = 1;
    int kernel_w = 1;
    int in_channels_per_group = 1;
    int out_channels = 1;
    std::vector<std::int8_t> data;
    int dec = 0;
    std::optional<std::vector<std::int32_t>> bias;

    std::size_t offset(int i, int j, int m, int n) const noexcept {
        return ((static_cast<std::size_t>(i) * static_cast<std::size_t>(kernel_w) +
                 static_cast<std::size_t>(j)) *
                    static_cast<std::size_t>(in_channels_per_group) +
                static_cast<std::size_t>(m)) *
                   static_cast<std::size_t>(out_channels) +
               static_cast<std::size_t>(n);
    }

    std::size_t expected_size() const noexcept {
        return static_cast<std::size_t>(kernel_h) * static_cast<std::size_t>(kernel_w) *
               static_cast<std::size_t>(in_channels_per_group) *
               static_cast<std::size_t>(out_channels);
    }

    /// Throws DimensionError if the data or bias length disagrees with the shape.
    void validate() const;

    friend bool operator==(const QWeights&, const QWeights&) = default;
};

QWeights make_weights(int kernel, int in_channels_per_group, int out_channels, int dec,
                      std::vector<std::int8_t> data,
                      std::optional<std::vector<std::int32_t>> bias = std::nullopt);

} // namespace qconv
