#include "qdkit/population.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qdkit/error.hpp"

namespace qdkit {

namespace {

std::vector<Objectives> objectives_of(const Population& pop) {
  std::vector<Objectives> objs;
  objs.reserve(pop.size());
  for (const Individual& ind : pop) objs.push_back(ind.objectives);
  return objs;
}

struct RankedPopulation {
  std::vector<std::size_t> rank;      // front index per member
  std::vector<double> crowding;       // within-front crowding per member
};

RankedPopulation rank_population(const Population& pop) {
  const std::vector<Objectives> objs = objectives_of(pop);
  const auto fronts = non_dominated_sort(objs);
  RankedPopulation out;
  out.rank.assign(pop.size(), 0);
  out.crowding.assign(pop.size(), 0.0);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    std::vector<Objectives> front_objs;
    front_objs.reserve(fronts[f].size());
    for (std::size_t idx : fronts[f]) front_objs.push_back(objs[idx]);
    const std::vector<double> crowd = crowding_distance(front_objs);
    for (std::size_t i = 0; i < fronts[f].size(); ++i) {
      out.rank[fronts[f][i]] = f;
      out.crowding[fronts[f][i]] = crowd[i];
    }
  }
  return out;
}

// True when a beats b under (rank asc, crowding desc, index asc).
bool tournament_wins(const RankedPopulation& ranked, std::size_t a, std::size_t b) {
  if (ranked.rank[a] != ranked.rank[b]) return ranked.rank[a] < ranked.rank[b];
  if (ranked.crowding[a] != ranked.crowding[b]) return ranked.crowding[a] > ranked.crowding[b];
  return a < b;
}

}  // namespace

std::vector<Genotype> nsga2_make_offspring(const Population& population, std::size_t count,
                                           const IsolineParams& variation,
                                           std::span<const double> lower,
                                           std::span<const double> upper, RngStream& rng) {
  if (population.empty()) throw InvalidArgument("nsga2_make_offspring: empty population");
  const RankedPopulation ranked = rank_population(population);
  auto tournament = [&](RngStream& r) {
    const std::size_t a = r.uniform_index(population.size());
    const std::size_t b = r.uniform_index(population.size());
    return tournament_wins(ranked, a, b) ? a : b;
  };
  std::vector<Genotype> offspring;
  offspring.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t p1 = tournament(rng);
    const std::size_t p2 = tournament(rng);
    offspring.push_back(isoline_variation(population[p1].genotype, population[p2].genotype,
                                          variation, lower, upper, rng));
  }
  return offspring;
}

Population nsga2_select(const Population& merged, std::size_t capacity) {
  const std::vector<Objectives> objs = objectives_of(merged);
  const auto fronts = non_dominated_sort(objs);
  Population survivors;
  survivors.reserve(capacity);
  for (const auto& front : fronts) {
    if (survivors.size() == capacity) break;
    if (survivors.size() + front.size() <= capacity) {
      for (std::size_t idx : front) survivors.push_back(merged[idx]);
      continue;
    }
    // Split front: keep the most spread-out members.
    std::vector<Objectives> front_objs;
    front_objs.reserve(front.size());
    for (std::size_t idx : front) front_objs.push_back(objs[idx]);
    const std::vector<double> crowd = crowding_distance(front_objs);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
    for (std::size_t r = 0; survivors.size() < capacity; ++r) {
      survivors.push_back(merged[front[order[r]]]);
    }
    break;
  }
  return survivors;
}

Population nsga2_step(const Population& population, const Evaluator& evaluator,
                      const IsolineParams& variation, RngStream& rng) {
  if (population.size() % 2 != 0) throw ConfigError("nsga2_step: population size must be even");
  const TaskSpec& spec = evaluator.task().spec();
  const std::vector<Genotype> offspring = nsga2_make_offspring(
      population, population.size(), variation, spec.lower, spec.upper, rng);
  const std::vector<ScoringResult> scores = evaluator.score(offspring);

  Population merged = population;
  merged.reserve(2 * population.size());
  for (std::size_t i = 0; i < offspring.size(); ++i) {
    merged.push_back(Individual{offspring[i], scores[i].objectives});
  }
  return nsga2_select(merged, population.size());
}

Population spea2_select(const Population& merged, std::size_t capacity, std::size_t k) {
  const std::vector<Objectives> objs = objectives_of(merged);
  const std::vector<double> fitness = spea2_fitness(objs, k);

  std::vector<std::size_t> non_dominated;
  std::vector<std::size_t> dominated;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    (fitness[i] < 1.0 ? non_dominated : dominated).push_back(i);
  }

  if (non_dominated.size() < capacity) {
    // Pad with the best dominated members.
    std::stable_sort(dominated.begin(), dominated.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    for (std::size_t idx : dominated) {
      if (non_dominated.size() == capacity) break;
      non_dominated.push_back(idx);
    }
    Population archive;
    archive.reserve(non_dominated.size());
    for (std::size_t idx : non_dominated) archive.push_back(merged[idx]);
    return archive;
  }

  // Truncate: repeatedly drop the member with the smallest k-th-neighbor
  // distance within the survivor set (ties: lowest index).
  std::vector<std::size_t> keep = non_dominated;
  while (keep.size() > capacity) {
    std::size_t worst = 0;
    double worst_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < keep.size(); ++i) {
      std::vector<double> dists;
      dists.reserve(keep.size() - 1);
      for (std::size_t j = 0; j < keep.size(); ++j) {
        if (i == j) continue;
        double d2 = 0.0;
        for (std::size_t o = 0; o < objs[keep[i]].size(); ++o) {
          const double d = objs[keep[i]][o] - objs[keep[j]][o];
          d2 += d * d;
        }
        dists.push_back(std::sqrt(d2));
      }
      const std::size_t kk = std::min(k, dists.size()) - 1;
      std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(kk),
                       dists.end());
      if (dists[kk] < worst_dist) {
        worst_dist = dists[kk];
        worst = i;
      }
    }
    keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(worst));
  }
  Population archive;
  archive.reserve(keep.size());
  for (std::size_t idx : keep) archive.push_back(merged[idx]);
  return archive;
}

std::pair<Population, Population> spea2_step(const Population& population,
                                             const Population& archive,
                                             const Evaluator& evaluator,
                                             const IsolineParams& variation,
                                             std::size_t archive_capacity, std::size_t k,
                                             RngStream& rng) {
  Population merged = population;
  merged.insert(merged.end(), archive.begin(), archive.end());
  Population next_archive = spea2_select(merged, archive_capacity, k);

  // Mating pool: binary tournament on SPEA2 fitness within the new archive.
  const std::vector<Objectives> archive_objs = objectives_of(next_archive);
  const std::vector<double> fitness = spea2_fitness(archive_objs, k);
  auto tournament = [&](RngStream& r) {
    const std::size_t a = r.uniform_index(next_archive.size());
    const std::size_t b = r.uniform_index(next_archive.size());
    if (fitness[a] != fitness[b]) return fitness[a] < fitness[b] ? a : b;
    return std::min(a, b);
  };

  const TaskSpec& spec = evaluator.task().spec();
  std::vector<Genotype> offspring;
  offspring.reserve(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    const std::size_t p1 = tournament(rng);
    const std::size_t p2 = tournament(rng);
    offspring.push_back(isoline_variation(next_archive[p1].genotype, next_archive[p2].genotype,
                                          variation, spec.lower, spec.upper, rng));
  }
  const std::vector<ScoringResult> scores = evaluator.score(offspring);
  Population next_population;
  next_population.reserve(offspring.size());
  for (std::size_t i = 0; i < offspring.size(); ++i) {
    next_population.push_back(Individual{offspring[i], scores[i].objectives});
  }
  return {std::move(next_population), std::move(next_archive)};
}

}  // namespace qdkit
