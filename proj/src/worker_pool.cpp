#include "pseries/worker_pool.hpp"

namespace pseries {

WorkerPool::WorkerPool(int size) : size_(size < 1 ? 1 : size) {
    for (int i = 0; i < size_ - 1; ++i) {
        workers_.emplace_back([this] {
            for (;;) {
                Task t;
                {
                    std::unique_lock<std::mutex> lock(mutex_);
                    cv_.wait(lock, [this] { return stop_ || !queue_.empty(); });
                    if (stop_ && queue_.empty())
                        return;
                    t = queue_.front();
                    queue_.pop_front();
                }
                run_task(t);
            }
        });
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stop_ = true;
    }
    cv_.notify_all();
    for (auto& w : workers_)
        w.join();
}

void WorkerPool::run_task(const Task& t) {
    (*t.fn)(t.chunk);
    t.remaining->fetch_sub(1, std::memory_order_acq_rel);
}

bool WorkerPool::try_help() {
    Task t;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (queue_.empty())
            return false;
        t = queue_.front();
        queue_.pop_front();
    }
    run_task(t);
    return true;
}

void WorkerPool::parallel_for(int chunks, const std::function<void(int)>& fn) {
    if (chunks <= 1 || workers_.empty()) {
        for (int i = 0; i < chunks; ++i)
            fn(i);
        return;
    }
    std::atomic<int> remaining(chunks - 1);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        for (int i = 1; i < chunks; ++i)
            queue_.push_back(Task{&fn, i, &remaining});
    }
    cv_.notify_all();
    fn(0);
    while (remaining.load(std::memory_order_acquire) > 0) {
        if (!try_help())
            std::this_thread::yield();
    }
}

} // namespace pseries
