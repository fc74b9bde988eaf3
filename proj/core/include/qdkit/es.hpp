#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qdkit/emitter.hpp"
#include "qdkit/scoring.hpp"

namespace qdkit {

/// Rank-based evolution-strategies gradient estimate:
/// (1 / (N * sigma)) * sum_i rank_i * direction_i, with fitnesses mapped to
/// centered ranks in [-0.5, 0.5] (ties share their group's average rank).
/// Invariant under strictly increasing fitness transformations. Directions
/// are expected to come in antithetic pairs.
std::vector<double> es_gradient_estimate(std::span<const std::vector<double>> directions,
                                         std::span<const double> fitnesses, double sigma);

/// Mean Euclidean distance from `descriptor` to its min(k, archive size)
/// nearest neighbors; +inf for an empty archive.
double novelty_score(std::span<const double> descriptor,
                     std::span<const Descriptor> archive_descriptors, std::size_t k);

struct EsOptions {
  std::size_t n_directions = 32;  // antithetic, must be even
  double step_size = 0.05;        // perturbation std-dev, absolute units
  double learning_rate = 0.5;
  std::size_t explore_period = 10;  // generations per mode before flipping
  std::size_t k_novelty = 10;
};

/// Evolution-strategies emitter alternating between fitness ascent and
/// novelty ascent on a fixed schedule. Each step estimates a rank gradient
/// from antithetic perturbations of the search point (scored internally),
/// moves the search point, and emits it.
class EsEmitter : public Emitter {
 public:
  enum class Mode { kExploit, kExplore };

  EsEmitter(const Task& task, EsOptions options);

  std::vector<Genotype> emit(const Repertoire& repertoire, std::size_t count, RngStream& rng,
                             ThreadPool& pool) override;

  Mode mode() const { return mode_; }
  const Genotype& search_point() const { return search_point_; }

 private:
  Genotype step_once(const Repertoire& repertoire, RngStream& rng, ThreadPool& pool);

  const Task* task_;
  EsOptions options_;
  Genotype search_point_;
  Mode mode_ = Mode::kExploit;
  std::size_t generations_in_mode_ = 0;
};

}  // namespace qdkit
