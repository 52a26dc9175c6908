#include "qconv/bench.hpp"
#include "qconv/costmodel.hpp"
#include "qconv/error.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace qconv;
using namespace qconv::bench;
using K = PrimitiveKind;

namespace {

BenchRecord sample_record() {
    BenchRecord r;
    r.experiment = 3;
    r.primitive = K::depthwise_separable;
    r.path = KernelPath::fast;
    r.groups = 16;
    r.kernel = 5;
    r.input_width = 12;
    r.in_channels = 16;
    r.out_channels = 8;
    r.dec_input = 4;
    r.dec_weight = -2;
    r.dec_output = 13;
    r.seed = 18446744073709551615ull;
    r.repeats = 7;
    r.macs_theoretical = 123456789;
    r.params = 4242;
    r.latency_mean_ns = 1234.5678901234;
    r.latency_std_ns = 0.1;
    r.counters = {1, 2, 3, 4, 5};
    return r;
}

} // namespace

TEST(Csv, EmptyListIsHeaderOnly) {
    std::ostringstream out;
    emit_csv(std::span<const BenchRecord>{}, out);
    const auto text = out.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
    EXPECT_EQ(text.rfind("experiment,primitive,path,groups,kernel,input_width", 0), 0u);
    std::istringstream in(text);
    EXPECT_TRUE(parse_csv(in).empty());
}

TEST(Csv, RoundTripIsExact) {
    std::vector<BenchRecord> rs{sample_record(), BenchRecord{}};
    std::ostringstream out;
    emit_csv(rs, out);
    std::istringstream in(out.str());
    const auto back = parse_csv(in);
    ASSERT_EQ(back.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_TRUE(back[i].same_config_and_counts(rs[i]));
        EXPECT_EQ(back[i].latency_mean_ns, rs[i].latency_mean_ns);
        EXPECT_EQ(back[i].latency_std_ns, rs[i].latency_std_ns);
    }
}

TEST(Csv, RejectsMalformedInput) {
    std::istringstream wrong_header("a,b,c\n");
    EXPECT_THROW(parse_csv(wrong_header), IoError);
    std::ostringstream out;
    const std::vector<BenchRecord> one{sample_record()};
    emit_csv(one, out);
    auto text = out.str();
    text.pop_back();
    text += ",9\n";
    std::istringstream extra(text);
    EXPECT_THROW(parse_csv(extra), IoError);
    EXPECT_THROW(read_csv("/nonexistent/dir/x.csv"), IoError);
    EXPECT_THROW(emit_csv(one, std::filesystem::path("/nonexistent/dir/x.csv")), IoError);
}

TEST(Plans, DefaultGrid) {
    const auto plans = default_plans();
    ASSERT_EQ(plans.size(), 5u);
    EXPECT_EQ(plans[0].swept, SweepParameter::groups);
    EXPECT_EQ(plans[1].swept, SweepParameter::kernel);
    EXPECT_EQ(plans[2].swept, SweepParameter::input_width);
    EXPECT_EQ(plans[3].swept, SweepParameter::in_channels);
    EXPECT_EQ(plans[4].swept, SweepParameter::out_channels);
    EXPECT_THROW(default_plan(6), ConfigError);
    const auto s = shape_at(plans[1], 7);
    EXPECT_EQ(s.kernel, 7);
    EXPECT_EQ(s.input_width, plans[1].input_width);
}

TEST(Plans, ParsePlanFile) {
    std::istringstream in(R"(# small sweep
experiment = 9
kernel = 3
input_width = 6
in_channels = 4
out_channels = 4
groups = 2
primitive = standard, grouped
path = ref
repeats = 2
seed = 11
[sweep]
width = 4, 6
)");
    const auto p = parse_plan(in);
    EXPECT_EQ(p.plan.experiment_id, 9);
    EXPECT_EQ(p.plan.swept, SweepParameter::input_width);
    EXPECT_EQ(p.plan.sweep_values, (std::vector<int>{4, 6}));
    EXPECT_EQ(p.primitives.size(), 2u);
    EXPECT_EQ(p.paths, std::vector<KernelPath>{KernelPath::reference});
    EXPECT_EQ(p.repeats, 2);
    EXPECT_EQ(p.seed, 11u);

    const auto result = run_sweep(p);
    EXPECT_EQ(result.records.size(), 4u);
    for (const auto& r : result.records)
        EXPECT_EQ(r.repeats, 2);
}

TEST(Plans, ParseErrors) {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return parse_plan(in);
    };
    EXPECT_THROW(parse("kernel = 3\n"), ConfigError);
    EXPECT_THROW(parse("bogus = 1\n[sweep]\nkernel = 1\n"), ConfigError);
    EXPECT_THROW(parse("kernel = three\n[sweep]\nkernel = 1\n"), ConfigError);
    EXPECT_THROW(parse("[sweep]\nkernel = 1\nwidth = 4\n"), ConfigError);
    EXPECT_THROW(parse("[sweep]\nbogus = 1\n"), ConfigError);
    EXPECT_THROW(parse("primitive = conv\n[sweep]\nkernel = 1\n"), ConfigError);
    EXPECT_THROW(parse("repeats = 0\n[sweep]\nkernel = 1\n"), ConfigError);
    EXPECT_THROW(load_plan("/nonexistent/plan.ini"), IoError);
}

TEST(Regression, PerfectAndDegenerateFits) {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const auto r = regress(x, y);
    EXPECT_NEAR(r.slope, 2.0, 1e-12);
    EXPECT_NEAR(r.intercept, 1.0, 1e-12);
    EXPECT_NEAR(r.r2, 1.0, 1e-12);
    const std::vector<double> flat{5, 5, 5, 5};
    EXPECT_EQ(regress(x, flat).r2, 0.0);
    const std::vector<double> two{1, 2};
    EXPECT_THROW(regress(two, two), InsufficientDataError);
    const std::vector<double> three{1, 2, 3};
    EXPECT_THROW(regress(x, three), DimensionError);
}

TEST(Experiments, RowCountAndDeterministicCounters) {
    auto plan = default_plan(3);
    plan.sweep_values = {8, 12};
    const auto a = run_experiment(plan, K::grouped, KernelPath::fast, 1, 5);
    const auto b = run_experiment(plan, K::grouped, KernelPath::fast, 1, 5);
    ASSERT_EQ(a.records.size(), 2u);
    ASSERT_EQ(b.records.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i)
        EXPECT_TRUE(a.records[i].same_config_and_counts(b.records[i]));
    EXPECT_EQ(a.records[1].input_width, 12);
    EXPECT_EQ(a.records[1].macs_theoretical, cost(make_bench_spec(K::grouped, shape_at(plan, 12))).macs);
    EXPECT_THROW(run_experiment(plan, K::add, KernelPath::fast, 1), UnsupportedPathError);
}

TEST(Experiments, InvalidPointsBecomeWarnings) {
    auto plan = default_plan(1);
    plan.sweep_values = {2, 3};
    const auto r = run_experiment(plan, K::grouped, KernelPath::reference, 1);
    EXPECT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Experiments, GroupedMacsHalveAsGroupsDouble) {
    const auto plan = default_plan(1);
    std::uint64_t previous = 0;
    for (int g : plan.sweep_values) {
        const auto macs = cost(make_bench_spec(K::grouped, shape_at(plan, g))).macs;
        if (previous != 0) {
            EXPECT_EQ(macs * 2, previous);
        }
        previous = macs;
    }
}

TEST(Experiments, ReferenceLatencyGrowsWithKernel) {
    auto plan = default_plan(2);
    plan.sweep_values = {1, 5, 11};
    const auto r = run_experiment(plan, K::standard, KernelPath::reference, 5);
    ASSERT_EQ(r.records.size(), 3u);
    EXPECT_LT(r.records[0].latency_mean_ns, r.records[1].latency_mean_ns);
    EXPECT_LT(r.records[1].latency_mean_ns, r.records[2].latency_mean_ns);
}

TEST(Verify, FastPathMatchesReference) {
    const auto report = verify_fast_path(17, 40);
    EXPECT_EQ(report.cases, 40);
    EXPECT_TRUE(report.passed()) << (report.messages.empty() ? "" : report.messages.front());
}
