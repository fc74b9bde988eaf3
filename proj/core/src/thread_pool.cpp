#include "qdkit/thread_pool.hpp"

#include <algorithm>

namespace qdkit {

ThreadPool::ThreadPool(std::size_t workers) : workers_(std::max<std::size_t>(workers, 1)) {
  if (workers_ == 1) return;
  threads_.reserve(workers_ - 1);
  for (std::size_t w = 1; w < workers_; ++w) {
    threads_.emplace_back([this, w] { worker_main(w); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void ThreadPool::run_chunk(std::size_t worker_index) {
  const std::size_t begin = worker_index * job_.chunk;
  const std::size_t end = std::min(begin + job_.chunk, job_.n);
  try {
    for (std::size_t i = begin; i < end; ++i) (*job_.fn)(i);
  } catch (...) {
    std::lock_guard lock(mutex_);
    if (!first_error_) first_error_ = std::current_exception();
  }
}

void ThreadPool::worker_main(std::size_t worker_index) {
  std::uint64_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      start_cv_.wait(lock, [&] { return stop_ || epoch_ != seen; });
      if (stop_) return;
      seen = epoch_;
    }
    run_chunk(worker_index);
    {
      std::lock_guard lock(mutex_);
      if (--pending_ == 0) done_cv_.notify_all();
    }
  }
}

void ThreadPool::parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (workers_ == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    job_.n = n;
    job_.fn = &fn;
    job_.chunk = (n + workers_ - 1) / workers_;
    pending_ = workers_ - 1;
    first_error_ = nullptr;
    ++epoch_;
  }
  start_cv_.notify_all();
  run_chunk(0);  // caller participates as worker 0
  {
    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [&] { return pending_ == 0; });
    if (first_error_) std::rethrow_exception(first_error_);
  }
}

}  // namespace qdkit
