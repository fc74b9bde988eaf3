#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qdkit/cmaes.hpp"
#include "qdkit/emitter.hpp"

namespace qdkit {

/// Improvement ranking for CMA direction updates, computed against a fixed
/// repertoire snapshot. Candidates are ordered in three bins:
///   1. candidates landing in empty cells, by fitness descending;
///   2. candidates beating their cell's incumbent, by improvement descending;
///   3. the rest, by fitness descending.
/// Ties inside a bin keep the lower batch index. Returns a permutation of
/// batch indices, best first.
std::vector<std::size_t> cmame_rank(
    std::span<const std::pair<std::size_t, double>> batch_cells_fitness,
    const Repertoire& repertoire);

struct CmaMeOptions {
  std::size_t lambda = 0;     // 0 -> default for the dimension
  double sigma0 = 0.5;        // initial step size after (re)start
  double min_sigma = 1e-12;   // restart when sigma decays below this
  double max_condition = 1e14;
};

/// CMA-ES emitter ranked by archive improvement. Restarts from a uniformly
/// sampled elite when a batch fails to improve the archive or the search
/// distribution degenerates.
class CmaMeEmitter : public Emitter {
 public:
  CmaMeEmitter(CmaMeOptions options, std::vector<double> lower, std::vector<double> upper);

  std::vector<Genotype> emit(const Repertoire& repertoire, std::size_t count, RngStream& rng,
                             ThreadPool& pool) override;
  void observe(const Repertoire& before_add, std::span<const Genotype> batch,
               std::span<const ScoringResult> scores) override;
  void advance(const Repertoire& after_add, std::span<const Genotype> batch,
               std::span<const ScoringResult> scores, std::span<const AddResult> outcomes,
               RngStream& rng) override;

  const CmaesState& state() const { return *state_; }
  std::size_t restarts() const { return restarts_; }

 private:
  void restart_from(const Repertoire& repertoire, RngStream& rng);

  CmaMeOptions options_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::optional<CmaesState> state_;
  std::vector<std::size_t> pending_ranking_;
  bool pending_improved_ = false;
  std::size_t restarts_ = 0;
};

}  // namespace qdkit
