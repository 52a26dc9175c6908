#include "qconv/layer_spec.hpp"

#include "qconv/error.hpp"

#include <cstdlib>

namespace qconv {

std::string_view to_string(PrimitiveKind kind) noexcept {
    switch (kind) {
    case PrimitiveKind::standard: return "standard";
    case PrimitiveKind::grouped: return "grouped";
    case PrimitiveKind::depthwise_separable: return "dwsep";
    case PrimitiveKind::shift: return "shift";
    case PrimitiveKind::add: return "add";
    }
    return "unknown";
}

PrimitiveKind parse_primitive(std::string_view name) {
    if (name == "standard") return PrimitiveKind::standard;
    if (name == "grouped") return PrimitiveKind::grouped;
    if (name == "dwsep" || name == "depthwise_separable") return PrimitiveKind::depthwise_separable;
    if (name == "shift") return PrimitiveKind::shift;
    if (name == "add") return PrimitiveKind::add;
    throw ConfigError("unknown primitive '" + std::string(name) + "'");
}

ShiftTable ShiftTable::round_robin(int channels, int kernel) {
    if (channels <= 0 || kernel <= 0 || kernel % 2 == 0)
        throw ConfigError("ShiftTable: channels must be positive and kernel odd");
    const int r = (kernel - 1) / 2;
    const int cells = kernel * kernel;
    ShiftTable table;
    table.shifts.reserve(static_cast<std::size_t>(channels));
    for (int m = 0; m < channels; ++m) {
        const int idx = m % cells;
        table.shifts.push_back({idx / kernel - r, idx % kernel - r});
    }
    return table;
}

void ShiftTable::validate(int channels, int kernel) const {
    if (shifts.size() != static_cast<std::size_t>(channels))
        throw ConfigError("ShiftTable: expected " + std::to_string(channels) + " entries, got " +
                          std::to_string(shifts.size()));
    const int r = (kernel - 1) / 2;
    for (const auto& s : shifts)
        if (std::abs(s.alpha) > r || std::abs(s.beta) > r)
            throw ConfigError("ShiftTable: shift outside kernel radius " + std::to_string(r));
}

std::string describe(const LayerSpec& s) {
    std::string out = std::string(to_string(s.kind)) + " k=" + std::to_string(s.kernel) +
                      " w=" + std::to_string(s.input_width) + " cin=" + std::to_string(s.in_channels) +
                      " cout=" + std::to_string(s.out_channels) + " g=" + std::to_string(s.groups) +
                      " dec=" + std::to_string(s.dec_input) + "/" + std::to_string(s.dec_weight) + "/" +
                      std::to_string(s.dec_output);
    if (s.kind == PrimitiveKind::depthwise_separable)
        out += " pw=" + std::to_string(s.pointwise_dec_weight) + "/" + std::to_string(s.pointwise_dec_output);
    return out;
}

void LayerSpec::validate() const {
    if (input_width <= 0 || in_channels <= 0 || out_channels <= 0 || kernel <= 0 || groups <= 0)
        throw ConfigError("LayerSpec: dimensions must be positive");
    if (kernel % 2 == 0)
        throw ConfigError("LayerSpec: kernel must be odd, got " + std::to_string(kernel));
    switch (kind) {
    case PrimitiveKind::standard:
    case PrimitiveKind::add:
    case PrimitiveKind::shift:
        if (groups != 1)
            throw ConfigError("LayerSpec: " + std::string(to_string(kind)) + " requires groups == 1");
        break;
    case PrimitiveKind::grouped:
        if (in_channels % groups != 0 || out_channels % groups != 0)
            throw ConfigError("LayerSpec: groups " + std::to_string(groups) +
                              " must divide in_channels " + std::to_string(in_channels) +
                              " and out_channels " + std::to_string(out_channels));
        break;
    case PrimitiveKind::depthwise_separable:
        if (groups != in_channels)
            throw ConfigError("LayerSpec: depthwise separable requires groups == in_channels");
        break;
    }
    if (kind == PrimitiveKind::shift) {
        if (!shift_table)
            throw ConfigError("LayerSpec: shift primitive requires a shift table");
        shift_table->validate(in_channels, kernel);
    }
    const long long terms = kind == PrimitiveKind::shift
                                ? in_channels
                                : static_cast<long long>(kernel) * kernel * in_channels_per_group();
    if (terms > max_accumulation_terms || in_channels > max_accumulation_terms)
        throw ConfigError("LayerSpec: too many accumulation terms per output (" +
                          std::to_string(terms) + ")");
}

} // namespace qconv
