#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qdkit/emitter.hpp"
#include "qdkit/pareto.hpp"
#include "qdkit/rng.hpp"
#include "qdkit/scoring.hpp"
#include "qdkit/task.hpp"

namespace qdkit {

struct Individual {
  Genotype genotype;
  Objectives objectives;

  bool operator==(const Individual&) const = default;
};

/// Fixed-size population for the multi-objective baselines.
using Population = std::vector<Individual>;

/// Generates `count` offspring by binary tournament over (front rank
/// ascending, crowding descending, index ascending) followed by iso+line
/// variation of the winners. Used by NSGA-II.
std::vector<Genotype> nsga2_make_offspring(const Population& population, std::size_t count,
                                           const IsolineParams& variation,
                                           std::span<const double> lower,
                                           std::span<const double> upper, RngStream& rng);

/// Environmental selection of NSGA-II: fill whole fronts of parents union
/// offspring, then truncate the split front by crowding distance
/// descending (ties: lowest index). Returns the surviving individuals.
Population nsga2_select(const Population& merged, std::size_t capacity);

/// One NSGA-II generation: N offspring, parallel scoring, survivor
/// selection back to N. Throws ConfigError for odd N.
Population nsga2_step(const Population& population, const Evaluator& evaluator,
                      const IsolineParams& variation, RngStream& rng);

/// SPEA2 environmental selection: non-dominated members of population union
/// archive, truncated to capacity by repeatedly dropping the member with
/// the smallest k-th-neighbor distance, or padded with the best dominated
/// members when short.
Population spea2_select(const Population& merged, std::size_t capacity, std::size_t k);

/// One SPEA2 generation. Returns (next population, next archive): the new
/// archive is the environmental selection of population union archive and
/// the next population is bred from it by binary tournament on SPEA2
/// fitness plus iso+line variation.
std::pair<Population, Population> spea2_step(const Population& population,
                                             const Population& archive,
                                             const Evaluator& evaluator,
                                             const IsolineParams& variation,
                                             std::size_t archive_capacity, std::size_t k,
                                             RngStream& rng);

}  // namespace qdkit
