#include "qconv/quantizer.hpp"

#include "qconv/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qconv {

int choose_dec(std::span<const double> values) {
    if (values.empty())
        throw DomainError("choose_dec: empty tensor");
    double max_abs = 0.0;
    for (double v : values) {
        if (!std::isfinite(v))
            throw DomainError("choose_dec: non-finite value");
        max_abs = std::max(max_abs, std::abs(v));
    }
    if (max_abs == 0.0)
        return 0;
    // max_abs = m * 2^e with m in [0.5, 1); exact powers of two have m == 0.5.
    int e = 0;
    const double m = std::frexp(max_abs, &e);
    return m == 0.5 ? e - 1 : e;
}

int choose_dec(const FloatTensor& t) { return choose_dec(std::span<const double>(t.data)); }

std::int8_t quantize_value(double x, int dec) {
    if (!std::isfinite(x))
        throw DomainError("quantize: non-finite value");
    const double scaled = std::floor(std::ldexp(x, 7 - dec));
    return static_cast<std::int8_t>(std::clamp(scaled, -128.0, 127.0));
}

double dequantize_value(std::int8_t x, int dec) { return std::ldexp(static_cast<double>(x), dec - 7); }

QTensor quantize(const FloatTensor& t, int dec) {
    std::vector<std::int8_t> out(t.data.size());
    std::transform(t.data.begin(), t.data.end(), out.begin(),
                   [dec](double v) { return quantize_value(v, dec); });
    return QTensor(t.height, t.width, t.channels, dec, std::move(out));
}

FloatTensor dequantize(const QTensor& t) {
    FloatTensor out{t.height(), t.width(), t.channels(), std::vector<double>(t.size())};
    const auto src = t.data();
    std::transform(src.begin(), src.end(), out.data.begin(),
                   [dec = t.dec()](std::int8_t v) { return dequantize_value(v, dec); });
    return out;
}

std::int32_t quantize_bias(double b, int dec) {
    if (!std::isfinite(b))
        throw DomainError("quantize_bias: non-finite value");
    constexpr double lo = std::numeric_limits<std::int32_t>::min();
    constexpr double hi = std::numeric_limits<std::int32_t>::max();
    return static_cast<std::int32_t>(std::clamp(std::floor(std::ldexp(b, 14 - dec)), lo, hi));
}

} // namespace qconv
