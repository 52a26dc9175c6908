#include "qconv/fastpath.hpp"

#include "fast_kernels.hpp"

namespace qconv {

std::span<const std::int16_t> Im2ColBuffer::column(int i) const {
    if (i < 0 || i >= valid_)
        throw BoundsError("Im2ColBuffer: column " + std::to_string(i) + " not filled");
    return {storage_.data() + static_cast<std::size_t>(i) * patch_length_, patch_length_};
}

std::span<std::int16_t> Im2ColBuffer::push_column() {
    if (valid_ >= max_patches)
        throw ContractError("Im2ColBuffer: at most 2 patches may be buffered");
    const auto start = static_cast<std::size_t>(valid_) * patch_length_;
    ++valid_;
    return {storage_.data() + start, patch_length_};
}

namespace {

void check_positions(std::span<const OutputPosition> positions, int width) {
    if (positions.size() > static_cast<std::size_t>(Im2ColBuffer::max_patches))
        throw ContractError("im2col: at most 2 output positions per buffer fill, got " +
                            std::to_string(positions.size()));
    for (const auto& p : positions)
        if (p.h < 0 || p.h >= width || p.w < 0 || p.w >= width)
            throw BoundsError("im2col: output position outside the output tensor");
}

} // namespace

Im2ColBuffer im2col_patches(const QTensor& x, const LayerSpec& spec, std::span<const OutputPosition> positions,
                            int group) {
    const auto g = detail::spatial_geometry(spec);
    detail::check_geometry(g);
    detail::check_input(x, g);
    check_positions(positions, g.width);
    if (group < 0 || group >= g.groups)
        throw BoundsError("im2col: group index out of range");
    Im2ColBuffer buf(static_cast<std::size_t>(g.patch_length()));
    NullCounter c;
    for (const auto& p : positions)
        detail::fill_patch(buf.push_column(), x, g, group, p, c);
    return buf;
}

Im2ColBuffer im2col_patches_shifted(const QTensor& x, const LayerSpec& spec, const ShiftTable& table,
                                    std::span<const OutputPosition> positions) {
    table.validate(spec.in_channels, spec.kernel);
    const auto g = detail::shift_pointwise_geometry(spec);
    detail::check_input(x, g);
    check_positions(positions, g.width);
    Im2ColBuffer buf(static_cast<std::size_t>(spec.in_channels));
    NullCounter c;
    for (const auto& p : positions)
        detail::fill_shifted_patch(buf.push_column(), x, table, p, c);
    return buf;
}

WidenedFilters widen_filters(const QWeights& w) {
    w.validate();
    NullCounter c;
    return detail::widen_filters(w, c);
}

GemmBlock gemm_2x2_packed(const Im2ColBuffer& buf, const WidenedFilters& filters, std::span<const int> filter_pair,
                          const Requantization& rq) {
    if (buf.patch_length() != filters.patch_length)
        throw DimensionError("gemm_2x2_packed: column length " + std::to_string(buf.patch_length()) +
                             " differs from filter length " + std::to_string(filters.patch_length));
    if (filter_pair.empty() || filter_pair.size() > 2)
        throw ContractError("gemm_2x2_packed: expects one or two filters");
    if (buf.valid_count() == 0)
        throw ContractError("gemm_2x2_packed: column buffer is empty");
    for (int n : filter_pair)
        if (n < 0 || n >= filters.count)
            throw BoundsError("gemm_2x2_packed: filter index out of range");
    if (!rq.bias.empty() && rq.bias.size() != static_cast<std::size_t>(filters.count))
        throw DimensionError("gemm_2x2_packed: bias length must equal filter count");

    GemmBlock block;
    block.patches = buf.valid_count();
    block.filters = static_cast<int>(filter_pair.size());
    const std::array<const std::int16_t*, 2> cols{buf.column(0).data(),
                                                  block.patches == 2 ? buf.column(1).data() : nullptr};
    const std::array<const std::int16_t*, 2> rows{filters.row(filter_pair[0]).data(),
                                                  block.filters == 2 ? filters.row(filter_pair[1]).data() : nullptr};
    NullCounter c;
    detail::dot_block(block.patches, block.filters, cols, rows, filters.patch_length, block.acc, c);
    for (int p = 0; p < block.patches; ++p) {
        for (int f = 0; f < block.filters; ++f) {
            const auto i = static_cast<std::size_t>(p * 2 + f);
            const std::int32_t b = rq.bias.empty() ? 0 : rq.bias[static_cast<std::size_t>(filter_pair[static_cast<std::size_t>(f)])];
            block.out[i] = requantize(block.acc[i], b, rq.shift_output);
        }
    }
    return block;
}

QTensor conv_standard_fast(const QTensor& x, const QWeights& w, const LayerSpec& spec) {
    if (spec.groups != 1)
        throw ConfigError("conv_standard_fast: groups must be 1");
    NullCounter c;
    return detail::conv_fast(x, w, detail::spatial_geometry(spec), c);
}

QTensor conv_grouped_fast(const QTensor& x, const QWeights& w, const LayerSpec& spec) {
    NullCounter c;
    return detail::conv_fast(x, w, detail::spatial_geometry(spec), c);
}

QTensor conv_shift_fast(const QTensor& x, const QWeights& w_pointwise, const ShiftTable& table,
                        const LayerSpec& spec) {
    NullCounter c;
    return detail::conv_shift_fast(x, w_pointwise, table, spec, c);
}

QTensor conv_dwsep_fast(const QTensor& x, const QWeights& w_depthwise, const QWeights& w_pointwise,
                        const LayerSpec& spec) {
    NullCounter c;
    return detail::conv_dwsep_fast(x, w_depthwise, w_pointwise, spec, c);
}

} // namespace qconv
