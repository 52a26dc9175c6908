#pragma once

#include "qconv/layer_spec.hpp"
#include "qconv/rational.hpp"

#include <cstdint>

namespace qconv {

/// Analytical cost of one layer. Gains are relative to a standard convolution with
/// the same kernel, channel counts and output width. Biases are not counted.
struct CostReport {
    std::uint64_t params = 0;
    std::uint64_t macs = 0;
    Rational param_gain{1};
    Rational complexity_gain{1};

    friend bool operator==(const CostReport&, const CostReport&) = default;
};

/// Parameter and MAC formulas per primitive:
///   standard, add   k^2 Cx Cy           k^2 Cx Hy^2 Cy
///   grouped         k^2 Cx Cy / G       k^2 Cx Hy^2 Cy / G
///   dwsep           Cx (k^2 + Cy)       Cx Hy^2 (k^2 + Cy)
///   shift           Cx (2 + Cy)         Cx Cy Hy^2
/// Throws ConfigError for an invalid spec.
CostReport cost(const LayerSpec& spec);

/// Multiplications the reference kernel performs (padded taps included). Zero for add.
std::uint64_t executed_macs(const LayerSpec& spec);

/// Absolute-difference operations of add convolution; zero for every other primitive.
std::uint64_t executed_abs_ops(const LayerSpec& spec);

} // namespace qconv
