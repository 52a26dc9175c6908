#include "oracles.hpp"
#include "test_util.hpp"

#include "qconv/bench.hpp"
#include "qconv/costmodel.hpp"
#include "qconv/error.hpp"
#include "qconv/instrument.hpp"
#include "qconv/reference.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qconv;
using K = PrimitiveKind;

TEST(Instrument, ShiftOperationHasNoMultiplies) {
    std::mt19937_64 rng(1);
    const QTensor x(5, 5, 3, 0, oracle::random_i8(75, rng));
    const ShiftTable t{{{1, 0}, {0, -1}, {0, 0}}};
    const auto run = run_counted_shift(x, t);
    EXPECT_EQ(run.counters.mul, 0u);
    EXPECT_EQ(run.counters.add_sub, 0u);
    EXPECT_EQ(run.counters.stores, 75u);
    EXPECT_EQ(run.counters.loads, 75u - 5u - 5u);
    EXPECT_EQ(run.output, shift_op(x, t));
}

TEST(Instrument, MultipliesMatchCostModel) {
    for (K kind : {K::standard, K::grouped, K::depthwise_separable, K::shift, K::add}) {
        const auto s = bench::make_bench_spec(kind, {2, 3, 9, 8, 6});
        const auto ref = count_ops(s, KernelPath::reference);
        EXPECT_EQ(ref.mul, executed_macs(s)) << describe(s);
        EXPECT_EQ(ref.abs_ops, executed_abs_ops(s)) << describe(s);
        if (path_supported(kind, KernelPath::fast)) {
            EXPECT_EQ(count_ops(s, KernelPath::fast).mul, executed_macs(s)) << describe(s);
        }
    }
}

TEST(Instrument, CountedRunIsBitExactAndDataIndependent) {
    for (K kind : {K::standard, K::grouped, K::depthwise_separable, K::shift, K::add})
        for (KernelPath path : {KernelPath::reference, KernelPath::fast}) {
            if (!path_supported(kind, path))
                continue;
            const auto s = bench::make_bench_spec(kind, {2, 5, 7, 6, 4});
            const auto a = bench::random_workload(s, 1);
            const auto b = bench::random_workload(s, 2);
            const auto ra = run_counted(s, path, a.input, a.weights);
            const auto rb = run_counted(s, path, b.input, b.weights);
            EXPECT_EQ(ra.output, run_layer(s, path, a.input, a.weights));
            EXPECT_EQ(ra.counters, rb.counters);
            EXPECT_EQ(ra.counters, count_ops(s, path));
        }
}

TEST(Instrument, AddHasNoFastPath) {
    const auto s = bench::make_bench_spec(K::add, {1, 3, 4, 2, 2});
    const auto work = bench::random_workload(s, 3);
    EXPECT_THROW(run_counted(s, KernelPath::fast, work.input, work.weights), UnsupportedPathError);
    EXPECT_THROW(access_ratio(s), UnsupportedPathError);
    EXPECT_FALSE(path_supported(K::add, KernelPath::fast));
}

TEST(Instrument, BlockedGemmHalvesLoadsPerMultiply) {
    // 1x1 kernel, no padding: 4 positions, 4 filters, 4 input channels.
    auto s = testutil::spec(K::standard, 2, 4, 4, 1, 1, 0, 0, 0);
    const auto ref = count_ops(s, KernelPath::reference);
    const auto fast = count_ops(s, KernelPath::fast);
    const std::uint64_t macs = 64;
    EXPECT_EQ(ref.loads, 2 * macs);
    const std::uint64_t widening = 16, im2col = 16;
    EXPECT_EQ(fast.loads - widening - im2col, macs);
    // every patch element written to the column buffer exactly once
    EXPECT_EQ(fast.stores, widening + im2col + 16u);
}

TEST(Instrument, ColumnBufferStoresStayWithinTwoPatchesPerFill) {
    const auto s = bench::make_bench_spec(K::grouped, {2, 3, 9, 8, 6});
    const auto fast = count_ops(s, KernelPath::fast);
    const std::uint64_t positions = 81, patch = 9 * 4, weights = 9 * 4 * 6;
    EXPECT_EQ(fast.stores, weights + positions * patch * 2 + positions * 6);
}

TEST(Instrument, FastPathHasFewerAccessesPerMultiply) {
    for (int width : bench::default_plan(3).sweep_values) {
        const auto s = bench::make_bench_spec(K::standard, {1, 3, width, 16, 16});
        const auto r = access_ratio(s);
        EXPECT_GT(r, Rational(1)) << width;
        const auto g = access_ratio(bench::make_bench_spec(K::grouped, {2, 3, width, 16, 16}));
        // convolutions and grouped convolutions stay in the same band
        EXPECT_LT(r / g, Rational(3, 2));
        EXPECT_GT(r / g, Rational(2, 3));
    }
}
