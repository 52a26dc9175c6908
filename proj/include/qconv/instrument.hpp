#pragma once

#include "qconv/layer_spec.hpp"
#include "qconv/op_counters.hpp"
#include "qconv/qtensor.hpp"
#include "qconv/rational.hpp"

#include <optional>
#include <string_view>

namespace qconv {

enum class KernelPath { reference, fast };

/// "ref" or "fast".
std::string_view to_string(KernelPath path) noexcept;
KernelPath parse_path(std::string_view name);

/// Whether `path` is implemented for `kind` (add convolution has no fast path).
bool path_supported(PrimitiveKind kind, KernelPath path) noexcept;

/// Weights of one layer. `spatial` holds the k x k weights of standard, grouped and add
/// convolution and the depthwise weights of depthwise separable convolution;
/// `pointwise` holds the 1x1 weights of depthwise separable and shift convolution.
struct LayerWeights {
    std::optional<QWeights> spatial;
    std::optional<QWeights> pointwise;
};

/// Runs the production (uncounted) kernel for spec.kind on `path`.
/// Throws UnsupportedPathError for add + fast, ConfigError when a weight set is missing.
QTensor run_layer(const LayerSpec& spec, KernelPath path, const QTensor& x, const LayerWeights& weights);

struct CountedRun {
    QTensor output;
    OpCounters counters;
};

/// Instrumented twin of run_layer: same arithmetic, plus operation and access tallies.
CountedRun run_counted(const LayerSpec& spec, KernelPath path, const QTensor& x, const LayerWeights& weights);

/// Instrumented shift operation alone (pure data movement).
CountedRun run_counted_shift(const QTensor& x, const ShiftTable& table);

/// Counters of a run on zero-valued data; counts depend only on the spec.
OpCounters count_ops(const LayerSpec& spec, KernelPath path);

/// (reference accesses per multiply) / (fast accesses per multiply).
/// Throws UnsupportedPathError when the primitive has no fast path.
Rational access_ratio(const LayerSpec& spec);

/// Zero weights of the right shapes for spec (bias absent).
LayerWeights zero_weights(const LayerSpec& spec);

} // namespace qconv
