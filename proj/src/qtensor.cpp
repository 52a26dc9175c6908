#include "qconv/qtensor.hpp"

#include "qconv/error.hpp"

#include <string>

namespace qconv {

QTensor::QTensor(int height, int width, int channels, int dec, std::vector<std::int8_t> data)
    : height_(height), width_(width), channels_(channels), dec_(dec), data_(std::move(data)) {
    if (height <= 0 || width <= 0 || channels <= 0)
        throw DimensionError("QTensor: dimensions must be positive");
    const auto expected = static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
                          static_cast<std::size_t>(channels);
    if (data_.size() != expected)
        throw DimensionError("QTensor: data length " + std::to_string(data_.size()) +
                             " does not match shape product " + std::to_string(expected));
}

QTensor QTensor::zeros(int height, int width, int channels, int dec) {
    if (height <= 0 || width <= 0 || channels <= 0)
        throw DimensionError("QTensor: dimensions must be positive");
    std::vector<std::int8_t> data(static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
                                  static_cast<std::size_t>(channels));
    return QTensor(height, width, channels, dec, std::move(data));
}

std::int8_t QTensor::at(int h, int w, int c) const {
    if (h < 0 || h >= height_ || w < 0 || w >= width_ || c < 0 || c >= channels_)
        throw BoundsError("QTensor: index (" + std::to_string(h) + "," + std::to_string(w) + "," +
                          std::to_string(c) + ") out of range");
    return data_[offset(h, w, c)];
}

void QWeights::validate() const {
    if (kernel_h <= 0 || kernel_w <= 0 || in_channels_per_group <= 0 || out_channels <= 0)
        throw DimensionError("QWeights: dimensions must be positive");
    if (data.size() != expected_size())
        throw DimensionError("QWeights: data length " + std::to_string(data.size()) +
                             " does not match shape product " + std::to_string(expected_size()));
    if (bias && bias->size() != static_cast<std::size_t>(out_channels))
        throw DimensionError("QWeights: bias length must equal out_channels");
}

QWeights make_weights(int kernel, int in_channels_per_group, int out_channels, int dec,
                      std::vector<std::int8_t> data,
                      std::optional<std::vector<std::int32_t>> bias) {
    QWeights w{kernel, kernel, in_channels_per_group, out_channels, std::move(data), dec, std::move(bias)};
    w.validate();
    return w;
}

} // namespace qconv
