#include "qconv/bench.hpp"

#include <array>
#include <random>

namespace qconv::bench {

namespace {

LayerSpec random_spec(PrimitiveKind kind, std::mt19937_64& rng) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    constexpr std::array kernels{1, 3, 5, 7};
    constexpr std::array group_choices{1, 2, 4};

    LayerSpec s;
    s.kind = kind;
    s.kernel = kernels[static_cast<std::size_t>(uniform(0, 3))];
    s.input_width = uniform(4, 32);
    const int g = kind == PrimitiveKind::grouped ? group_choices[static_cast<std::size_t>(uniform(0, 2))] : 1;
    s.in_channels = g * uniform(1, 32 / g);
    s.out_channels = g * uniform(1, 32 / g);
    s.groups = kind == PrimitiveKind::depthwise_separable ? s.in_channels : g;
    s.dec_input = uniform(-2, 6);
    s.dec_weight = uniform(-2, 6);
    s.dec_output = s.dec_input + s.dec_weight - uniform(0, 14);
    s.pointwise_dec_weight = uniform(-2, 6);
    s.pointwise_dec_output = s.dec_output + s.pointwise_dec_weight - uniform(0, 14);
    if (kind == PrimitiveKind::shift) {
        const int r = s.radius();
        ShiftTable t;
        for (int m = 0; m < s.in_channels; ++m)
            t.shifts.push_back({uniform(-r, r), uniform(-r, r)});
        s.shift_table = std::move(t);
    }
    s.validate();
    return s;
}

} // namespace

VerifyReport verify_fast_path(std::uint64_t seed, int cases) {
    constexpr std::array kinds{PrimitiveKind::standard, PrimitiveKind::grouped, PrimitiveKind::depthwise_separable,
                               PrimitiveKind::shift};
    std::mt19937_64 rng(seed);
    VerifyReport report;
    for (int i = 0; i < cases; ++i) {
        const LayerSpec spec = random_spec(kinds[static_cast<std::size_t>(i) % kinds.size()], rng);
        const Workload work = random_workload(spec, rng(), (rng() & 1u) != 0);
        const QTensor ref = run_layer(spec, KernelPath::reference, work.input, work.weights);
        const QTensor fast = run_layer(spec, KernelPath::fast, work.input, work.weights);
        ++report.cases;
        if (ref != fast) {
            ++report.failures;
            std::size_t mismatches = 0;
            for (std::size_t e = 0; e < ref.size(); ++e)
                mismatches += ref.data()[e] != fast.data()[e];
            report.messages.push_back("case " + std::to_string(i) + " (" + describe(spec) + "): " +
                                      std::to_string(mismatches) + " mismatching elements");
        }
    }
    return report;
}

} // namespace qconv::bench
