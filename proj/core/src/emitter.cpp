#include "qdkit/emitter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdkit/error.hpp"

namespace qdkit {

void clip_to_bounds(Genotype& x, std::span<const double> lower, std::span<const double> upper) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], lower[i], upper[i]);
  }
}

Genotype isoline_variation(std::span<const double> x1, std::span<const double> x2,
                           const IsolineParams& params, std::span<const double> lower,
                           std::span<const double> upper, RngStream& rng) {
  if (x1.size() != x2.size()) throw InvalidArgument("isoline_variation: parent length mismatch");
  Genotype child(x1.size());
  const double eta = rng.next_normal();
  for (std::size_t i = 0; i < x1.size(); ++i) {
    child[i] = x1[i] + params.sigma_iso * rng.next_normal() +
               params.sigma_line * eta * (x2[i] - x1[i]);
  }
  clip_to_bounds(child, lower, upper);
  return child;
}

std::vector<Genotype> IsolineEmitter::emit(const Repertoire& repertoire, std::size_t count,
                                           RngStream& rng, ThreadPool& pool) {
  if (count == 0) return {};
  if (repertoire.empty()) throw EmitterError("IsolineEmitter: repertoire is empty");
  std::vector<RngStream> streams = split_rng(rng, count);
  std::vector<Genotype> batch(count);
  pool.parallel_for(count, [&](std::size_t i) {
    RngStream local = streams[i];
    const std::size_t a = repertoire.sample_cell(local);
    const std::size_t b = repertoire.sample_cell(local);
    batch[i] = isoline_variation(repertoire.cell(a)->genotype, repertoire.cell(b)->genotype,
                                 params_, lower_, upper_, local);
  });
  return batch;
}

CompoundEmitter::CompoundEmitter(std::vector<std::unique_ptr<Emitter>> emitters,
                                 std::vector<double> proportions)
    : emitters_(std::move(emitters)), proportions_(std::move(proportions)) {
  if (emitters_.empty() || emitters_.size() != proportions_.size()) {
    throw ConfigError("CompoundEmitter: one proportion per sub-emitter required");
  }
  const double total = std::accumulate(proportions_.begin(), proportions_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("CompoundEmitter: proportions must sum to 1");
  }
}

std::vector<std::size_t> CompoundEmitter::shares(std::size_t count) const {
  const std::size_t k = emitters_.size();
  std::vector<std::size_t> out(k);
  std::vector<double> remainder(k);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = proportions_[i] * static_cast<double>(count);
    out[i] = static_cast<std::size_t>(std::floor(exact));
    remainder[i] = exact - std::floor(exact);
    assigned += out[i];
  }
  // Largest remainder first; ties to the lowest index.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < count; ++i) {
    ++out[order[i % k]];
    ++assigned;
  }
  return out;
}

std::vector<Genotype> CompoundEmitter::emit(const Repertoire& repertoire, std::size_t count,
                                            RngStream& rng, ThreadPool& pool) {
  last_shares_ = shares(count);
  std::vector<RngStream> streams = split_rng(rng, emitters_.size());
  std::vector<Genotype> batch;
  batch.reserve(count);
  for (std::size_t e = 0; e < emitters_.size(); ++e) {
    if (last_shares_[e] == 0) continue;
    std::vector<Genotype> part = emitters_[e]->emit(repertoire, last_shares_[e], streams[e], pool);
    std::move(part.begin(), part.end(), std::back_inserter(batch));
  }
  return batch;
}

void CompoundEmitter::observe(const Repertoire& before_add, std::span<const Genotype> batch,
                              std::span<const ScoringResult> scores) {
  std::size_t offset = 0;
  for (std::size_t e = 0; e < emitters_.size(); ++e) {
    const std::size_t share = last_shares_[e];
    emitters_[e]->observe(before_add, batch.subspan(offset, share), scores.subspan(offset, share));
    offset += share;
  }
}

void CompoundEmitter::advance(const Repertoire& after_add, std::span<const Genotype> batch,
                              std::span<const ScoringResult> scores,
                              std::span<const AddResult> outcomes, RngStream& rng) {
  std::vector<RngStream> streams = split_rng(rng, emitters_.size());
  std::size_t offset = 0;
  for (std::size_t e = 0; e < emitters_.size(); ++e) {
    const std::size_t share = last_shares_[e];
    emitters_[e]->advance(after_add, batch.subspan(offset, share), scores.subspan(offset, share),
                          outcomes.subspan(offset, share), streams[e]);
    offset += share;
  }
}

}  // namespace qdkit
