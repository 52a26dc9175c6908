#pragma once

#include <cstdint>

namespace qconv {

/// Element-granularity operation and memory-access tallies for one kernel run.
///
/// loads count element reads from the input, weight, bias and im2col column buffers;
/// stores count element writes to output and column buffers. A value held in a
/// register and reused inside a GEMM block is counted once, at its load.
struct OpCounters {
    std::uint64_t mul = 0;
    std::uint64_t add_sub = 0;
    std::uint64_t abs_ops = 0;
    std::uint64_t loads = 0;
    std::uint64_t stores = 0;

    std::uint64_t accesses() const noexcept { return loads + stores; }
    void reset() noexcept { *this = OpCounters{}; }

    OpCounters& operator+=(const OpCounters& o) noexcept {
        mul += o.mul;
        add_sub += o.add_sub;
        abs_ops += o.abs_ops;
        loads += o.loads;
        stores += o.stores;
        return *this;
    }
    friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

/// Counting policy used by production kernels: every hook compiles away.
struct NullCounter {
    static constexpr bool enabled = false;
    void mul(std::uint64_t = 1) noexcept {}
    void add_sub(std::uint64_t = 1) noexcept {}
    void abs_op(std::uint64_t = 1) noexcept {}
    void load(std::uint64_t = 1) noexcept {}
    void store(std::uint64_t = 1) noexcept {}
};

/// Counting policy used by instrumented twins of the kernels.
struct TallyCounter {
    static constexpr bool enabled = true;
    OpCounters* counters;
    void mul(std::uint64_t n = 1) noexcept { counters->mul += n; }
    void add_sub(std::uint64_t n = 1) noexcept { counters->add_sub += n; }
    void abs_op(std::uint64_t n = 1) noexcept { counters->abs_ops += n; }
    void load(std::uint64_t n = 1) noexcept { counters->loads += n; }
    void store(std::uint64_t n = 1) noexcept { counters->stores += n; }
};

} // namespace qconv
