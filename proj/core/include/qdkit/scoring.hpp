#pragma once

#include <span>
#include <vector>

#include "qdkit/task.hpp"
#include "qdkit/thread_pool.hpp"

namespace qdkit {

/// Scores batches on the worker pool. Tasks are pure functions, so each
/// result lands in its candidate's slot and the output is independent of
/// worker count and scheduling.
class Evaluator {
 public:
  Evaluator(const Task& task, ThreadPool& pool) : task_(&task), pool_(&pool) {}

  const Task& task() const { return *task_; }

  std::vector<ScoringResult> score(std::span<const Genotype> batch) const {
    std::vector<ScoringResult> results(batch.size());
    pool_->parallel_for(batch.size(),
                        [&](std::size_t i) { results[i] = task_->evaluate(batch[i]); });
    return results;
  }

 private:
  const Task* task_;
  ThreadPool* pool_;
};

}  // namespace qdkit
