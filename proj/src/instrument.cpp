#include "qconv/instrument.hpp"

#include "fast_kernels.hpp"
#include "ref_kernels.hpp"

namespace qconv {

std::string_view to_string(KernelPath path) noexcept { return path == KernelPath::fast ? "fast" : "ref"; }

KernelPath parse_path(std::string_view name) {
    if (name == "ref" || name == "reference") return KernelPath::reference;
    if (name == "fast") return KernelPath::fast;
    throw ConfigError("unknown path '" + std::string(name) + "'");
}

bool path_supported(PrimitiveKind kind, KernelPath path) noexcept {
    return !(kind == PrimitiveKind::add && path == KernelPath::fast);
}

namespace {

const QWeights& need(const std::optional<QWeights>& w, const char* which) {
    if (!w)
        throw ConfigError(std::string("layer weights: missing ") + which + " weights");
    return *w;
}

template <class Counter>
QTensor dispatch(const LayerSpec& spec, KernelPath path, const QTensor& x, const LayerWeights& lw,
                 Counter& counter) {
    spec.validate();
    if (!path_supported(spec.kind, path))
        throw UnsupportedPathError("no fast path for add convolution");
    const bool fast = path == KernelPath::fast;
    switch (spec.kind) {
    case PrimitiveKind::standard:
    case PrimitiveKind::grouped: {
        const auto g = detail::spatial_geometry(spec);
        const QWeights& w = need(lw.spatial, "spatial");
        return fast ? detail::conv_fast(x, w, g, counter) : detail::conv_reference(x, w, g, counter);
    }
    case PrimitiveKind::depthwise_separable: {
        const QWeights& dw = need(lw.spatial, "depthwise");
        const QWeights& pw = need(lw.pointwise, "pointwise");
        return fast ? detail::conv_dwsep_fast(x, dw, pw, spec, counter)
                    : detail::dwsep_reference(x, dw, pw, spec, counter);
    }
    case PrimitiveKind::shift: {
        const QWeights& pw = need(lw.pointwise, "pointwise");
        return fast ? detail::conv_shift_fast(x, pw, *spec.shift_table, spec, counter)
                    : detail::conv_shift_reference(x, pw, *spec.shift_table, spec, counter);
    }
    case PrimitiveKind::add:
        return detail::conv_add_reference(x, need(lw.spatial, "spatial"), detail::spatial_geometry(spec), counter);
    }
    throw ConfigError("unknown primitive");
}

} // namespace

QTensor run_layer(const LayerSpec& spec, KernelPath path, const QTensor& x, const LayerWeights& weights) {
    NullCounter c;
    return dispatch(spec, path, x, weights, c);
}

CountedRun run_counted(const LayerSpec& spec, KernelPath path, const QTensor& x, const LayerWeights& weights) {
    OpCounters counters;
    TallyCounter c{&counters};
    QTensor out = dispatch(spec, path, x, weights, c);
    return {std::move(out), counters};
}

CountedRun run_counted_shift(const QTensor& x, const ShiftTable& table) {
    OpCounters counters;
    TallyCounter c{&counters};
    QTensor out = detail::shift_reference(x, table, c);
    return {std::move(out), counters};
}

LayerWeights zero_weights(const LayerSpec& spec) {
    spec.validate();
    auto zeros = [](int k, int cin, int cout, int dec) {
        QWeights w{k, k, cin, cout, {}, dec, std::nullopt};
        w.data.assign(w.expected_size(), 0);
        return w;
    };
    LayerWeights lw;
    switch (spec.kind) {
    case PrimitiveKind::standard:
    case PrimitiveKind::grouped:
    case PrimitiveKind::add:
        lw.spatial = zeros(spec.kernel, spec.in_channels_per_group(), spec.out_channels, spec.dec_weight);
        break;
    case PrimitiveKind::depthwise_separable:
        lw.spatial = zeros(spec.kernel, 1, spec.in_channels, spec.dec_weight);
        lw.pointwise = zeros(1, spec.in_channels, spec.out_channels, spec.pointwise_dec_weight);
        break;
    case PrimitiveKind::shift:
        lw.pointwise = zeros(1, spec.in_channels, spec.out_channels, spec.dec_weight);
        break;
    }
    return lw;
}

OpCounters count_ops(const LayerSpec& spec, KernelPath path) {
    const QTensor x = QTensor::zeros(spec.input_width, spec.input_width, spec.in_channels, spec.dec_input);
    return run_counted(spec, path, x, zero_weights(spec)).counters;
}

Rational access_ratio(const LayerSpec& spec) {
    spec.validate();
    if (!path_supported(spec.kind, KernelPath::fast))
        throw UnsupportedPathError("access_ratio: no fast path for add convolution");
    const OpCounters ref = count_ops(spec, KernelPath::reference);
    const OpCounters fast = count_ops(spec, KernelPath::fast);
    const auto i64 = [](std::uint64_t v) { return static_cast<std::int64_t>(v); };
    return Rational(i64(ref.accesses()), i64(ref.mul)) / Rational(i64(fast.accesses()), i64(fast.mul));
}

} // namespace qconv
