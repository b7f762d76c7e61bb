#ifndef PSERIES_CHANNEL_HPP
#define PSERIES_CHANNEL_HPP

#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>

#include "pseries/errors.hpp"

namespace pseries {

/// Bounded FIFO of precision signals between pipeline stages. Values must
/// be strictly increasing; a send of value j must happen after every part of
/// degree <= j of the producing stage has been published (the channel's own
/// synchronization then carries that ordering to the consumer). send blocks
/// while the buffer is full, recv blocks while it is empty; recv returns
/// nullopt once the channel is closed and drained.
class PrecisionChannel {
public:
    explicit PrecisionChannel(size_t capacity = 32)
        : capacity_(capacity == 0 ? 1 : capacity) {}

    void send(int value) {
        std::unique_lock<std::mutex> lock(mutex_);
        if (closed_)
            throw PipelineError("send on closed precision channel");
        if (value <= last_sent_)
            throw PipelineError("precision signals must be strictly increasing");
        not_full_.wait(lock, [this] { return queue_.size() < capacity_; });
        queue_.push_back(value);
        last_sent_ = value;
        not_empty_.notify_one();
    }

    std::optional<int> recv() {
        std::unique_lock<std::mutex> lock(mutex_);
        not_empty_.wait(lock, [this] { return closed_ || !queue_.empty(); });
        if (queue_.empty())
            return std::nullopt;
        int v = queue_.front();
        queue_.pop_front();
        not_full_.notify_one();
        return v;
    }

    void close() {
        std::lock_guard<std::mutex> lock(mutex_);
        closed_ = true;
        not_empty_.notify_all();
    }

    int last_sent() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return last_sent_;
    }

private:
    size_t capacity_;
    mutable std::mutex mutex_;
    std::condition_variable not_empty_;
    std::condition_variable not_full_;
    std::deque<int> queue_;
    bool closed_ = false;
    int last_sent_ = -1;
};

} // namespace pseries

#endif
