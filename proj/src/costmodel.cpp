#include "qconv/costmodel.hpp"

namespace qconv {

namespace {

using u64 = std::uint64_t;

struct Dims {
    u64 k2, cx, cy, hy2, g;
};

Dims dims(const LayerSpec& s) {
    const auto k = static_cast<u64>(s.kernel);
    const auto hy = static_cast<u64>(s.output_width());
    return {k * k, static_cast<u64>(s.in_channels), static_cast<u64>(s.out_channels), hy * hy,
            static_cast<u64>(s.groups)};
}

u64 params_of(const LayerSpec& s) {
    const Dims d = dims(s);
    switch (s.kind) {
    case PrimitiveKind::standard:
    case PrimitiveKind::add: return d.k2 * d.cx * d.cy;
    case PrimitiveKind::grouped: return d.k2 * (d.cx / d.g) * d.cy;
    case PrimitiveKind::depthwise_separable: return d.cx * (d.k2 + d.cy);
    case PrimitiveKind::shift: return d.cx * (2 + d.cy);
    }
    return 0;
}

u64 macs_of(const LayerSpec& s) {
    const Dims d = dims(s);
    switch (s.kind) {
    case PrimitiveKind::standard:
    case PrimitiveKind::add: return d.k2 * d.cx * d.hy2 * d.cy;
    case PrimitiveKind::grouped: return d.k2 * (d.cx / d.g) * d.hy2 * d.cy;
    case PrimitiveKind::depthwise_separable: return d.cx * d.hy2 * (d.k2 + d.cy);
    case PrimitiveKind::shift: return d.cx * d.cy * d.hy2;
    }
    return 0;
}

Rational ratio(u64 a, u64 b) { return Rational(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)); }

} // namespace

CostReport cost(const LayerSpec& spec) {
    spec.validate();
    const Dims d = dims(spec);
    const u64 std_params = d.k2 * d.cx * d.cy;
    const u64 std_macs = std_params * d.hy2;
    CostReport r;
    r.params = params_of(spec);
    r.macs = macs_of(spec);
    r.param_gain = ratio(r.params, std_params);
    r.complexity_gain = ratio(r.macs, std_macs);
    return r;
}

std::uint64_t executed_macs(const LayerSpec& spec) {
    spec.validate();
    return spec.kind == PrimitiveKind::add ? 0 : macs_of(spec);
}

std::uint64_t executed_abs_ops(const LayerSpec& spec) {
    spec.validate();
    return spec.kind == PrimitiveKind::add ? macs_of(spec) : 0;
}

} // namespace qconv
