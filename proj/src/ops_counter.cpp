#include "pseries/ops_counter.hpp"

#include <mutex>
#include <vector>

namespace pseries::ops {

namespace {

std::mutex registry_mutex;
std::vector<OpCounter*> registry;
OpCounter retired; // folded-in totals of threads that have exited

struct ThreadSlot {
    OpCounter counter;
    ThreadSlot() {
        std::lock_guard<std::mutex> lock(registry_mutex);
        registry.push_back(&counter);
    }
    ~ThreadSlot() {
        std::lock_guard<std::mutex> lock(registry_mutex);
        retired += counter;
        std::erase(registry, &counter);
    }
};

} // namespace

namespace detail {

std::atomic<bool> counting_enabled{false};

OpCounter& local_counter() {
    thread_local ThreadSlot slot;
    return slot.counter;
}

} // namespace detail

void enable() { detail::counting_enabled.store(true, std::memory_order_relaxed); }
void disable() { detail::counting_enabled.store(false, std::memory_order_relaxed); }

OpCounter snapshot() {
    std::lock_guard<std::mutex> lock(registry_mutex);
    OpCounter sum = retired;
    for (const OpCounter* c : registry)
        sum += *c;
    return sum;
}

void reset() {
    std::lock_guard<std::mutex> lock(registry_mutex);
    retired = OpCounter{};
    for (OpCounter* c : registry)
        *c = OpCounter{};
}

} // namespace pseries::ops
