#ifndef PSERIES_OPS_COUNTER_HPP
#define PSERIES_OPS_COUNTER_HPP

#include <atomic>
#include <cstdint>

namespace pseries {

/// Totals of exact field operations. Subtractions count as additions;
/// negation and zero-skipping are free. A dense product update of degree k
/// therefore costs k+1 multiplications and k additions, and a product with
/// one operand of order >= 1 costs k multiplications and k-1 additions
/// (2k-1 operations total).
struct OpCounter {
    std::uint64_t additions = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t divisions = 0;

    std::uint64_t total() const { return additions + multiplications + divisions; }

    OpCounter& operator+=(const OpCounter& o) {
        additions += o.additions;
        multiplications += o.multiplications;
        divisions += o.divisions;
        return *this;
    }
    friend OpCounter operator-(OpCounter a, const OpCounter& b) {
        a.additions -= b.additions;
        a.multiplications -= b.multiplications;
        a.divisions -= b.divisions;
        return a;
    }
    friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

namespace ops {

namespace detail {
extern std::atomic<bool> counting_enabled;
OpCounter& local_counter();
} // namespace detail

/// Enable/disable counting globally. Each thread accumulates into a private
/// counter; snapshot() merges them (including counters of threads that have
/// already exited).
void enable();
void disable();
inline bool enabled() { return detail::counting_enabled.load(std::memory_order_relaxed); }

/// Merged totals across all threads, without resetting.
OpCounter snapshot();

/// Zero every registered counter.
void reset();

inline void count_add() {
    if (enabled()) ++detail::local_counter().additions;
}
inline void count_mul() {
    if (enabled()) ++detail::local_counter().multiplications;
}
inline void count_div() {
    if (enabled()) ++detail::local_counter().divisions;
}

/// RAII: reset, enable on entry, disable on exit.
class CountingScope {
public:
    CountingScope() {
        reset();
        enable();
    }
    ~CountingScope() { disable(); }
    CountingScope(const CountingScope&) = delete;
    CountingScope& operator=(const CountingScope&) = delete;
};

} // namespace ops
} // namespace pseries

#endif
