#include "qdkit/cmame.hpp"

#include <algorithm>
#include <numeric>

#include "qdkit/error.hpp"

namespace qdkit {

std::vector<std::size_t> cmame_rank(
    std::span<const std::pair<std::size_t, double>> batch_cells_fitness,
    const Repertoire& repertoire) {
  enum Bin { kNew = 0, kImproved = 1, kRest = 2 };
  const std::size_t n = batch_cells_fitness.size();
  std::vector<int> bin(n);
  std::vector<double> key(n);  // sort key within bin, larger first
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [cell, fitness] = batch_cells_fitness[i];
    const auto& incumbent = repertoire.cell(cell);
    if (!incumbent.has_value()) {
      bin[i] = kNew;
      key[i] = fitness;
    } else if (fitness > incumbent->fitness) {
      bin[i] = kImproved;
      key[i] = fitness - incumbent->fitness;
    } else {
      bin[i] = kRest;
      key[i] = fitness;
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (bin[a] != bin[b]) return bin[a] < bin[b];
    return key[a] > key[b];
  });
  return order;
}

CmaMeEmitter::CmaMeEmitter(CmaMeOptions options, std::vector<double> lower,
                           std::vector<double> upper)
    : options_(options), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (options_.lambda == 0) options_.lambda = CmaesParams::default_lambda(lower_.size());
}

void CmaMeEmitter::restart_from(const Repertoire& repertoire, RngStream& rng) {
  if (repertoire.empty()) throw EmitterError("CmaMeEmitter: restart on empty repertoire");
  const std::size_t cell = repertoire.sample_cell(rng);
  state_.emplace(repertoire.cell(cell)->genotype, options_.sigma0,
                 CmaesParams::defaults(lower_.size(), options_.lambda));
  ++restarts_;
}

std::vector<Genotype> CmaMeEmitter::emit(const Repertoire& repertoire, std::size_t count,
                                         RngStream& rng, ThreadPool& pool) {
  (void)pool;
  if (count == 0) return {};
  if (!state_.has_value()) restart_from(repertoire, rng);
  std::vector<Genotype> batch = state_->ask(count, rng);
  for (Genotype& g : batch) clip_to_bounds(g, lower_, upper_);
  return batch;
}

void CmaMeEmitter::observe(const Repertoire& before_add, std::span<const Genotype> batch,
                           std::span<const ScoringResult> scores) {
  std::vector<std::pair<std::size_t, double>> cells_fitness(batch.size());
  pending_improved_ = false;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::size_t cell = before_add.layout().cell_of(scores[i].descriptor);
    cells_fitness[i] = {cell, scores[i].fitness()};
    const auto& incumbent = before_add.cell(cell);
    if (!incumbent.has_value() || scores[i].fitness() > incumbent->fitness) {
      pending_improved_ = true;
    }
  }
  pending_ranking_ = cmame_rank(cells_fitness, before_add);
}

void CmaMeEmitter::advance(const Repertoire& after_add, std::span<const Genotype> batch,
                           std::span<const ScoringResult> scores,
                           std::span<const AddResult> outcomes, RngStream& rng) {
  (void)scores;
  (void)outcomes;
  // A truncated final batch is scored and archived but does not update the
  // search distribution.
  if (batch.size() == state_->params().lambda) {
    state_->tell(batch, pending_ranking_);
  }
  const bool degenerate = state_->sigma() < options_.min_sigma ||
                          state_->condition_number() > options_.max_condition;
  if (!pending_improved_ || degenerate) {
    restart_from(after_add, rng);
  }
}

}  // namespace qdkit
