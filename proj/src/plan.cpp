#include "qconv/bench.hpp"

#include "qconv/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>

namespace qconv::bench {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(',', start);
        const auto item = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (!item.empty())
            out.push_back(item);
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

template <class T>
T to_number(std::string_view s, std::size_t line) {
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ConfigError("plan line " + std::to_string(line) + ": expected an integer, got '" + std::string(s) + "'");
    return v;
}

} // namespace

SweepPlan parse_plan(std::istream& in) {
    SweepPlan sp;
    ExperimentPlan& p = sp.plan;
    bool in_sweep = false;
    bool have_sweep = false;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line == "[sweep]") {
            in_sweep = true;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("plan line " + std::to_string(lineno) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (in_sweep) {
            if (have_sweep)
                throw ConfigError("plan line " + std::to_string(lineno) + ": [sweep] takes exactly one parameter");
            p.swept = parse_sweep_parameter(key);
            for (auto item : split_list(value))
                p.sweep_values.push_back(to_number<int>(item, lineno));
            if (p.sweep_values.empty())
                throw ConfigError("plan line " + std::to_string(lineno) + ": empty sweep list");
            have_sweep = true;
            continue;
        }
        if (key == "experiment") p.experiment_id = to_number<int>(value, lineno);
        else if (key == "groups") p.groups = to_number<int>(value, lineno);
        else if (key == "kernel") p.kernel = to_number<int>(value, lineno);
        else if (key == "input_width") p.input_width = to_number<int>(value, lineno);
        else if (key == "in_channels") p.in_channels = to_number<int>(value, lineno);
        else if (key == "out_channels") p.out_channels = to_number<int>(value, lineno);
        else if (key == "repeats") sp.repeats = to_number<int>(value, lineno);
        else if (key == "seed") sp.seed = to_number<std::uint64_t>(value, lineno);
        else if (key == "primitive") {
            for (auto item : split_list(value))
                sp.primitives.push_back(parse_primitive(item));
        } else if (key == "path") {
            for (auto item : split_list(value))
                sp.paths.push_back(parse_path(item));
        } else
            throw ConfigError("plan line " + std::to_string(lineno) + ": unknown key '" + std::string(key) + "'");
    }
    if (!have_sweep)
        throw ConfigError("plan: missing [sweep] block");
    if (sp.repeats <= 0)
        throw ConfigError("plan: repeats must be positive");
    if (sp.primitives.empty())
        sp.primitives = {PrimitiveKind::standard, PrimitiveKind::grouped, PrimitiveKind::depthwise_separable,
                         PrimitiveKind::shift, PrimitiveKind::add};
    if (sp.paths.empty())
        sp.paths = {KernelPath::reference, KernelPath::fast};
    return sp;
}

SweepPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open plan file '" + path.string() + "'");
    return parse_plan(in);
}

} // namespace qconv::bench
