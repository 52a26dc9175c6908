#include "qconv/bench.hpp"

#include "qconv/costmodel.hpp"
#include "qconv/error.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <random>

namespace qconv::bench {

std::string_view to_string(SweepParameter p) noexcept {
    switch (p) {
    case SweepParameter::groups: return "groups";
    case SweepParameter::kernel: return "kernel";
    case SweepParameter::input_width: return "input_width";
    case SweepParameter::in_channels: return "in_channels";
    case SweepParameter::out_channels: return "out_channels";
    }
    return "unknown";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    if (name == "groups") return SweepParameter::groups;
    if (name == "kernel") return SweepParameter::kernel;
    if (name == "input_width" || name == "width") return SweepParameter::input_width;
    if (name == "in_channels") return SweepParameter::in_channels;
    if (name == "out_channels" || name == "filters") return SweepParameter::out_channels;
    throw ConfigError("unknown sweep parameter '" + std::string(name) + "'");
}

namespace {

std::vector<int> range(int first, int last, int step) {
    std::vector<int> v;
    for (int x = first; x <= last; x += step)
        v.push_back(x);
    return v;
}

int ceil_log2(long long v) { return v <= 1 ? 0 : static_cast<int>(std::bit_width(static_cast<unsigned long long>(v - 1))); }

int output_shift_for(long long terms) { return 7 + ceil_log2(terms) / 2; }

} // namespace

ExperimentPlan default_plan(int experiment_id) {
    ExperimentPlan p;
    p.experiment_id = experiment_id;
    switch (experiment_id) {
    case 1:
        p.swept = SweepParameter::groups;
        p.sweep_values = {1, 2, 4, 8, 16, 32};
        p.groups = 1;
        p.kernel = 3;
        p.input_width = 10;
        p.in_channels = 128;
        p.out_channels = 64;
        break;
    case 2:
        p.swept = SweepParameter::kernel;
        p.sweep_values = range(1, 11, 2);
        p.groups = 2;
        break;
    case 3:
        p.swept = SweepParameter::input_width;
        p.sweep_values = range(8, 32, 4);
        p.groups = 2;
        break;
    case 4:
        p.swept = SweepParameter::in_channels;
        p.sweep_values = range(4, 32, 4);
        p.groups = 2;
        break;
    case 5:
        p.swept = SweepParameter::out_channels;
        p.sweep_values = range(4, 32, 4);
        p.groups = 2;
        break;
    default: throw ConfigError("experiment id must be in 1..5, got " + std::to_string(experiment_id));
    }
    return p;
}

std::vector<ExperimentPlan> default_plans() {
    std::vector<ExperimentPlan> plans;
    for (int id = 1; id <= 5; ++id)
        plans.push_back(default_plan(id));
    return plans;
}

LayerShape shape_at(const ExperimentPlan& plan, int v) {
    LayerShape s{plan.groups, plan.kernel, plan.input_width, plan.in_channels, plan.out_channels};
    switch (plan.swept) {
    case SweepParameter::groups: s.groups = v; break;
    case SweepParameter::kernel: s.kernel = v; break;
    case SweepParameter::input_width: s.input_width = v; break;
    case SweepParameter::in_channels: s.in_channels = v; break;
    case SweepParameter::out_channels: s.out_channels = v; break;
    }
    return s;
}

LayerSpec make_bench_spec(PrimitiveKind kind, const LayerShape& shape) {
    LayerSpec s;
    s.kind = kind;
    s.input_width = shape.input_width;
    s.in_channels = shape.in_channels;
    s.out_channels = shape.out_channels;
    s.kernel = shape.kernel;
    s.dec_input = 4;
    s.dec_weight = 2;
    switch (kind) {
    case PrimitiveKind::grouped: s.groups = shape.groups; break;
    case PrimitiveKind::depthwise_separable: s.groups = shape.in_channels; break;
    default: s.groups = 1; break;
    }
    if (s.groups <= 0 || s.in_channels <= 0 || s.kernel <= 0)
        throw ConfigError("make_bench_spec: dimensions must be positive");
    if (kind == PrimitiveKind::shift && shape.kernel % 2 == 1)
        s.shift_table = ShiftTable::round_robin(shape.in_channels, shape.kernel);

    const long long k2 = static_cast<long long>(shape.kernel) * shape.kernel;
    switch (kind) {
    case PrimitiveKind::shift:
        s.dec_output = s.dec_input + s.dec_weight - output_shift_for(shape.in_channels);
        break;
    case PrimitiveKind::depthwise_separable:
        s.dec_output = s.dec_input + s.dec_weight - output_shift_for(k2);
        s.pointwise_dec_weight = 2;
        s.pointwise_dec_output = s.dec_output + s.pointwise_dec_weight - output_shift_for(shape.in_channels);
        break;
    default:
        s.dec_output = s.dec_input + s.dec_weight - output_shift_for(k2 * (shape.in_channels / s.groups));
        break;
    }
    s.validate();
    return s;
}

Workload random_workload(const LayerSpec& spec, std::uint64_t seed, bool with_bias) {
    spec.validate();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> i8(-128, 127);
    std::uniform_int_distribution<int> bias_dist(-(1 << 14), 1 << 14);
    auto fill = [&](std::vector<std::int8_t>& v) {
        for (auto& e : v)
            e = static_cast<std::int8_t>(i8(rng));
    };
    std::vector<std::int8_t> xd(static_cast<std::size_t>(spec.input_width) * spec.input_width * spec.in_channels);
    fill(xd);
    Workload work{QTensor(spec.input_width, spec.input_width, spec.in_channels, spec.dec_input, std::move(xd)),
                  zero_weights(spec)};
    for (auto* w : {&work.weights.spatial, &work.weights.pointwise}) {
        if (!*w)
            continue;
        fill((*w)->data);
        if (with_bias && spec.kind != PrimitiveKind::add) {
            std::vector<std::int32_t> b(static_cast<std::size_t>((*w)->out_channels));
            for (auto& e : b)
                e = bias_dist(rng);
            (*w)->bias = std::move(b);
        }
    }
    return work;
}

LatencyStats time_layer(const LayerSpec& spec, KernelPath path, const Workload& work, int repeats) {
    if (repeats <= 0)
        throw ConfigError("repeats must be positive");
    using clock = std::chrono::steady_clock;
    volatile std::int8_t sink = 0;
    sink = run_layer(spec, path, work.input, work.weights).data()[0];
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = clock::now();
        const QTensor y = run_layer(spec, path, work.input, work.weights);
        const auto t1 = clock::now();
        sink = y.data()[0];
        samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
    }
    (void)sink;
    LatencyStats st;
    for (double s : samples)
        st.mean_ns += s;
    st.mean_ns /= static_cast<double>(samples.size());
    for (double s : samples)
        st.std_ns += (s - st.mean_ns) * (s - st.mean_ns);
    st.std_ns = std::sqrt(st.std_ns / static_cast<double>(samples.size()));
    return st;
}

bool BenchRecord::same_config_and_counts(const BenchRecord& o) const {
    return experiment == o.experiment && primitive == o.primitive && path == o.path && groups == o.groups &&
           kernel == o.kernel && input_width == o.input_width && in_channels == o.in_channels &&
           out_channels == o.out_channels && dec_input == o.dec_input && dec_weight == o.dec_weight &&
           dec_output == o.dec_output && seed == o.seed && repeats == o.repeats &&
           macs_theoretical == o.macs_theoretical && params == o.params && counters == o.counters;
}

ExperimentResult run_experiment(const ExperimentPlan& plan, PrimitiveKind primitive, KernelPath path, int repeats,
                                std::uint64_t seed) {
    if (!path_supported(primitive, path))
        throw UnsupportedPathError("no fast path for add convolution");
    ExperimentResult result;
    for (int v : plan.sweep_values) {
        LayerSpec spec;
        try {
            spec = make_bench_spec(primitive, shape_at(plan, v));
        } catch (const ConfigError& e) {
            result.warnings.push_back("experiment " + std::to_string(plan.experiment_id) + ", " +
                                      std::string(to_string(plan.swept)) + "=" + std::to_string(v) + ", " +
                                      std::string(to_string(primitive)) + ": skipped: " + e.what());
            continue;
        }
        const Workload work = random_workload(spec, seed);
        const CostReport c = cost(spec);
        BenchRecord rec;
        rec.experiment = plan.experiment_id;
        rec.primitive = primitive;
        rec.path = path;
        rec.groups = spec.groups;
        rec.kernel = spec.kernel;
        rec.input_width = spec.input_width;
        rec.in_channels = spec.in_channels;
        rec.out_channels = spec.out_channels;
        rec.dec_input = spec.dec_input;
        rec.dec_weight = spec.dec_weight;
        rec.dec_output = spec.final_dec();
        rec.seed = seed;
        rec.repeats = repeats;
        rec.macs_theoretical = c.macs;
        rec.params = c.params;
        rec.counters = run_counted(spec, path, work.input, work.weights).counters;
        const LatencyStats lat = time_layer(spec, path, work, repeats);
        rec.latency_mean_ns = lat.mean_ns;
        rec.latency_std_ns = lat.std_ns;
        result.records.push_back(rec);
    }
    return result;
}

ExperimentResult run_sweep(const SweepPlan& sp) {
    ExperimentResult all;
    for (PrimitiveKind kind : sp.primitives) {
        for (KernelPath path : sp.paths) {
            if (!path_supported(kind, path)) {
                all.warnings.push_back(std::string(to_string(kind)) + "/" + std::string(to_string(path)) +
                                       ": no such kernel path, skipped");
                continue;
            }
            ExperimentResult r = run_experiment(sp.plan, kind, path, sp.repeats, sp.seed);
            all.records.insert(all.records.end(), r.records.begin(), r.records.end());
            all.warnings.insert(all.warnings.end(), r.warnings.begin(), r.warnings.end());
        }
    }
    return all;
}

Axis parse_axis(std::string_view name) {
    if (name == "macs" || name == "macs_theoretical") return Axis::macs;
    if (name == "latency" || name == "latency_mean_ns") return Axis::latency;
    throw ConfigError("unknown regression axis '" + std::string(name) + "'");
}

std::string_view to_string(Axis a) noexcept { return a == Axis::macs ? "macs_theoretical" : "latency_mean_ns"; }

RegressionResult regress(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw DimensionError("regress: x and y lengths differ");
    if (xs.size() < 3)
        throw InsufficientDataError("regress: need at least 3 points, got " + std::to_string(xs.size()));
    const auto n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    RegressionResult r;
    r.slope = sxx > 0 ? sxy / sxx : 0.0;
    r.intercept = my - r.slope * mx;
    if (syy > 0) {
        double ss_res = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double e = ys[i] - (r.slope * xs[i] + r.intercept);
            ss_res += e * e;
        }
        r.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return r;
}

RegressionResult regress(std::span<const BenchRecord> records, Axis x, Axis y) {
    auto value = [](const BenchRecord& rec, Axis a) {
        return a == Axis::macs ? static_cast<double>(rec.macs_theoretical) : rec.latency_mean_ns;
    };
    std::vector<double> xs, ys;
    for (const auto& rec : records) {
        xs.push_back(value(rec, x));
        ys.push_back(value(rec, y));
    }
    RegressionResult r = regress(xs, ys);
    r.x_name = to_string(x);
    r.y_name = to_string(y);
    return r;
}

} // namespace qconv::bench
