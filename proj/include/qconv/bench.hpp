#pragma once

#include "qconv/instrument.hpp"
#include "qconv/layer_spec.hpp"
#include "qconv/op_counters.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qconv::bench {

enum class SweepParameter { groups, kernel, input_width, in_channels, out_channels };

std::string_view to_string(SweepParameter p) noexcept;
/// Accepts the CSV column names plus the aliases "width" and "filters".
SweepParameter parse_sweep_parameter(std::string_view name);

/// One row of the experiment table: every layer hyperparameter fixed except `swept`.
struct ExperimentPlan {
    int experiment_id = 0;
    SweepParameter swept = SweepParameter::kernel;
    std::vector<int> sweep_values;
    int groups = 1;
    int kernel = 3;
    int input_width = 32;
    int in_channels = 16;
    int out_channels = 16;
};

/// Experiments 1-5: groups 1..32, kernel 1..11, width 8..32, in_channels 4..32, filters 4..32.
ExperimentPlan default_plan(int experiment_id);
std::vector<ExperimentPlan> default_plans();

/// Hyperparameters of one sweep point.
struct LayerShape {
    int groups = 1;
    int kernel = 3;
    int input_width = 32;
    int in_channels = 16;
    int out_channels = 16;
};

LayerShape shape_at(const ExperimentPlan& plan, int sweep_value);

/// Builds a runnable spec for `kind`. Group count is taken from the shape only for grouped
/// convolution; standard, shift and add use 1 and depthwise separable uses in_channels.
/// Exponents: input 4, weights 2, output chosen for a right shift of 7 + ceil(log2(terms)) / 2.
/// Throws ConfigError for invalid shapes.
LayerSpec make_bench_spec(PrimitiveKind kind, const LayerShape& shape);

/// Seeded input and weights, uniform over [-128, 127].
struct Workload {
    QTensor input;
    LayerWeights weights;
};
Workload random_workload(const LayerSpec& spec, std::uint64_t seed, bool with_bias = false);

struct LatencyStats {
    double mean_ns = 0;
    double std_ns = 0;
};

/// Mean and population standard deviation of `repeats` timed runs after one untimed warm-up.
LatencyStats time_layer(const LayerSpec& spec, KernelPath path, const Workload& work, int repeats);

struct BenchRecord {
    int experiment = 0;
    PrimitiveKind primitive = PrimitiveKind::standard;
    KernelPath path = KernelPath::reference;
    int groups = 1;
    int kernel = 1;
    int input_width = 1;
    int in_channels = 1;
    int out_channels = 1;
    int dec_input = 0;
    int dec_weight = 0;
    int dec_output = 0;
    std::uint64_t seed = 0;
    int repeats = 50;
    std::uint64_t macs_theoretical = 0;
    std::uint64_t params = 0;
    double latency_mean_ns = 0;
    double latency_std_ns = 0;
    OpCounters counters;

    /// Equality on everything except the two latency columns.
    bool same_config_and_counts(const BenchRecord& o) const;
};

inline constexpr int default_repeats = 50;

struct ExperimentResult {
    std::vector<BenchRecord> records;
    /// One line per skipped sweep point (invalid configuration) or unsupported path.
    std::vector<std::string> warnings;
};

/// Times `repeats` invocations for each sweep value. Timing is single-threaded.
/// Throws UnsupportedPathError for add + fast.
ExperimentResult run_experiment(const ExperimentPlan& plan, PrimitiveKind primitive, KernelPath path,
                                int repeats = default_repeats, std::uint64_t seed = 1);

enum class Axis { macs, latency };
Axis parse_axis(std::string_view name);
std::string_view to_string(Axis a) noexcept;

struct RegressionResult {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    std::string x_name;
    std::string y_name;
};

/// Ordinary least squares, r2 = 1 - SS_res / SS_tot (0 when SS_tot == 0).
/// Throws InsufficientDataError for fewer than 3 points.
RegressionResult regress(std::span<const double> xs, std::span<const double> ys);
RegressionResult regress(std::span<const BenchRecord> records, Axis x, Axis y = Axis::latency);

/// Column names in file order.
const std::vector<std::string>& csv_columns();
void emit_csv(std::span<const BenchRecord> records, std::ostream& out);
/// Throws IoError naming the path when it cannot be written.
void emit_csv(std::span<const BenchRecord> records, const std::filesystem::path& path);
/// Throws IoError on malformed input.
std::vector<BenchRecord> parse_csv(std::istream& in);
std::vector<BenchRecord> read_csv(const std::filesystem::path& path);

/// Contents of a plan file: fixed hyperparameters, a [sweep] block and the grid to run.
struct SweepPlan {
    ExperimentPlan plan;
    std::vector<PrimitiveKind> primitives;
    std::vector<KernelPath> paths;
    int repeats = default_repeats;
    std::uint64_t seed = 1;
};

/// Parses `key = value` lines ('#' comments) followed by a `[sweep]` block holding one
/// `<parameter> = v1, v2, ...` line. Keys are CSV column names; primitive and path take
/// comma lists (default: every primitive, both paths). Throws ConfigError.
SweepPlan parse_plan(std::istream& in);
SweepPlan load_plan(const std::filesystem::path& path);

/// Runs plan x primitives x paths; unsupported pairs become warnings.
ExperimentResult run_sweep(const SweepPlan& plan);

struct VerifyReport {
    int cases = 0;
    int failures = 0;
    std::vector<std::string> messages;
    bool passed() const noexcept { return failures == 0; }
};

/// Random configurations (kernel 1/3/5/7, width 4..32, channels 1..32, groups 1/2/4) for
/// every primitive with a fast path; compares fast and reference outputs elementwise.
VerifyReport verify_fast_path(std::uint64_t seed, int cases);

} // namespace qconv::bench
