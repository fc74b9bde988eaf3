#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qdkit {

/// Fixed-size pool running index-range jobs. Work is assigned as contiguous
/// static chunks, one per worker, so a job's output slots never depend on
/// scheduling. With one worker everything runs inline on the caller thread.
class ThreadPool {
 public:
  explicit ThreadPool(std::size_t workers);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  std::size_t workers() const { return workers_; }

  /// Runs fn(i) for i in [0, n). Blocks until all indices are done.
  /// fn must only write to per-index state; exceptions propagate to the
  /// caller (first one wins).
  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

 private:
  struct Job {
    std::size_t n = 0;
    const std::function<void(std::size_t)>* fn = nullptr;
    std::size_t chunk = 0;
  };

  void worker_main(std::size_t worker_index);
  void run_chunk(std::size_t worker_index);

  std::size_t workers_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  Job job_;
  std::uint64_t epoch_ = 0;
  std::size_t pending_ = 0;
  bool stop_ = false;
  std::exception_ptr first_error_;
};

}  // namespace qdkit
