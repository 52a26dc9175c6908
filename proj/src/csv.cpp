#include "qconv/bench.hpp"

#include "qconv/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qconv::bench {

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{
        "experiment",  "primitive",  "path",       "groups",           "kernel",         "input_width",
        "in_channels", "out_channels", "dec_input", "dec_weight",      "dec_output",     "seed",
        "repeats",     "macs_theoretical", "params", "latency_mean_ns", "latency_std_ns", "mul_count",
        "add_sub_count", "abs_count",  "loads",      "stores"};
    return cols;
}

namespace {

template <class T>
std::string number(T v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class T>
T parse_number(std::string_view field, std::size_t line, std::string_view column) {
    T v{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw IoError("csv line " + std::to_string(line) + ": bad " + std::string(column) + " value '" +
                      std::string(field) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

} // namespace

void emit_csv(std::span<const BenchRecord> records, std::ostream& out) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : records) {
        out << number(r.experiment) << ',' << to_string(r.primitive) << ',' << to_string(r.path) << ','
            << number(r.groups) << ',' << number(r.kernel) << ',' << number(r.input_width) << ','
            << number(r.in_channels) << ',' << number(r.out_channels) << ',' << number(r.dec_input) << ','
            << number(r.dec_weight) << ',' << number(r.dec_output) << ',' << number(r.seed) << ','
            << number(r.repeats) << ',' << number(r.macs_theoretical) << ',' << number(r.params) << ','
            << number(r.latency_mean_ns) << ',' << number(r.latency_std_ns) << ',' << number(r.counters.mul) << ','
            << number(r.counters.add_sub) << ',' << number(r.counters.abs_ops) << ',' << number(r.counters.loads)
            << ',' << number(r.counters.stores) << '\n';
    }
}

void emit_csv(std::span<const BenchRecord> records, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    emit_csv(records, out);
    out.flush();
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

std::vector<BenchRecord> parse_csv(std::istream& in) {
    const auto& cols = csv_columns();
    std::string line;
    if (!std::getline(in, line))
        throw IoError("csv: missing header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = split(line);
    if (header.size() != cols.size() || !std::equal(header.begin(), header.end(), cols.begin()))
        throw IoError("csv: header does not match the expected column layout");

    std::vector<BenchRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = split(line);
        if (f.size() != cols.size())
            throw IoError("csv line " + std::to_string(lineno) + ": expected " + std::to_string(cols.size()) +
                          " fields, got " + std::to_string(f.size()));
        BenchRecord r;
        std::size_t i = 0;
        auto next_int = [&] {
            const std::size_t k = i++;
            return parse_number<int>(f[k], lineno, cols[k]);
        };
        auto next_u64 = [&] {
            const std::size_t k = i++;
            return parse_number<std::uint64_t>(f[k], lineno, cols[k]);
        };
        auto next_dbl = [&] {
            const std::size_t k = i++;
            return parse_number<double>(f[k], lineno, cols[k]);
        };
        try {
            r.experiment = next_int();
            r.primitive = parse_primitive(f[i++]);
            r.path = parse_path(f[i++]);
        } catch (const ConfigError& e) {
            throw IoError("csv line " + std::to_string(lineno) + ": " + e.what());
        }
        r.groups = next_int();
        r.kernel = next_int();
        r.input_width = next_int();
        r.in_channels = next_int();
        r.out_channels = next_int();
        r.dec_input = next_int();
        r.dec_weight = next_int();
        r.dec_output = next_int();
        r.seed = next_u64();
        r.repeats = next_int();
        r.macs_theoretical = next_u64();
        r.params = next_u64();
        r.latency_mean_ns = next_dbl();
        r.latency_std_ns = next_dbl();
        r.counters.mul = next_u64();
        r.counters.add_sub = next_u64();
        r.counters.abs_ops = next_u64();
        r.counters.loads = next_u64();
        r.counters.stores = next_u64();
        records.push_back(r);
    }
    return records;
}

std::vector<BenchRecord> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    return parse_csv(in);
}

} // namespace qconv::bench
