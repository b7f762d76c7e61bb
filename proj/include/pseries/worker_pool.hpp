#ifndef PSERIES_WORKER_POOL_HPP
#define PSERIES_WORKER_POOL_HPP

#include <atomic>
#include <condition_variable>
#include <deque>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pseries {

/// Fork-join task pool. A pool of size t owns t-1 worker threads; the
/// calling thread always executes chunk 0 of a parallel_for itself, and a
/// waiting caller helps drain the queue, so nested parallel_for calls (a
/// pipeline stage fanning out, then each index fanning out again) cannot
/// starve. parallel_for returns only once every chunk has finished.
class WorkerPool {
public:
    explicit WorkerPool(int size);
    ~WorkerPool();
    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    int size() const { return size_; }

    /// Run fn(0), ..., fn(chunks-1); fn(0) on the caller. Safe to call from
    /// several threads at once and from inside a chunk.
    void parallel_for(int chunks, const std::function<void(int)>& fn);

private:
    struct Task {
        const std::function<void(int)>* fn;
        int chunk;
        std::atomic<int>* remaining;
    };

    void run_task(const Task& t);
    bool try_help();

    int size_;
    std::vector<std::thread> workers_;
    std::deque<Task> queue_;
    std::mutex mutex_;
    std::condition_variable cv_;
    bool stop_ = false;
};

} // namespace pseries

#endif
