#include "qdkit/es.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qdkit/error.hpp"

namespace qdkit {

std::vector<double> es_gradient_estimate(std::span<const std::vector<double>> directions,
                                         std::span<const double> fitnesses, double sigma) {
  if (sigma <= 0.0) throw InvalidArgument("es_gradient_estimate: sigma must be positive");
  if (directions.size() != fitnesses.size() || directions.empty()) {
    throw InvalidArgument("es_gradient_estimate: one fitness per direction required");
  }
  const std::size_t n = directions.size();

  // Centered ranks in [-0.5, 0.5]; tied fitnesses share the average rank of
  // their group so constant batches produce a zero gradient.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitnesses[a] < fitnesses[b]; });
  std::vector<double> rank(n, 0.0);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && fitnesses[order[j + 1]] == fitnesses[order[i]]) ++j;
    const double avg_pos = 0.5 * static_cast<double>(i + j);
    const double r = avg_pos / denom - 0.5;
    for (std::size_t p = i; p <= j; ++p) rank[order[p]] = r;
    i = j + 1;
  }

  std::vector<double> gradient(directions[0].size(), 0.0);
  const double scale = 1.0 / (static_cast<double>(n) * sigma);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t c = 0; c < gradient.size(); ++c) {
      gradient[c] += scale * rank[d] * directions[d][c];
    }
  }
  return gradient;
}

double novelty_score(std::span<const double> descriptor,
                     std::span<const Descriptor> archive_descriptors, std::size_t k) {
  if (k < 1) throw InvalidArgument("novelty_score: k must be >= 1");
  if (archive_descriptors.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> dists;
  dists.reserve(archive_descriptors.size());
  for (const Descriptor& a : archive_descriptors) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < descriptor.size(); ++i) {
      const double d = descriptor[i] - a[i];
      d2 += d * d;
    }
    dists.push_back(std::sqrt(d2));
  }
  const std::size_t kk = std::min(k, dists.size());
  std::partial_sort(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(kk), dists.end());
  double sum = 0.0;
  for (std::size_t j = 0; j < kk; ++j) sum += dists[j];
  return sum / static_cast<double>(kk);
}

EsEmitter::EsEmitter(const Task& task, EsOptions options)
    : task_(&task), options_(options) {
  if (options_.n_directions < 2 || options_.n_directions % 2 != 0) {
    throw ConfigError("EsEmitter: n_directions must be even and >= 2");
  }
  if (options_.explore_period < 1) throw ConfigError("EsEmitter: explore_period must be >= 1");
}

Genotype EsEmitter::step_once(const Repertoire& repertoire, RngStream& rng, ThreadPool& pool) {
  const TaskSpec& spec = task_->spec();
  if (search_point_.empty()) {
    // First use: start from a uniformly sampled elite.
    search_point_ = repertoire.sample(1, rng)[0];
  }

  const std::size_t pairs = options_.n_directions / 2;
  std::vector<std::vector<double>> directions(options_.n_directions);
  for (std::size_t p = 0; p < pairs; ++p) {
    std::vector<double> eps(spec.n_params);
    for (double& e : eps) e = rng.next_normal();
    directions[2 * p] = eps;
    for (double& e : eps) e = -e;
    directions[2 * p + 1] = std::move(eps);
  }

  std::vector<Genotype> probes(options_.n_directions);
  for (std::size_t d = 0; d < options_.n_directions; ++d) {
    Genotype x = search_point_;
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += options_.step_size * directions[d][c];
    clip_to_bounds(x, spec.lower, spec.upper);
    probes[d] = std::move(x);
  }
  Evaluator evaluator(*task_, pool);
  const std::vector<ScoringResult> scores = evaluator.score(probes);

  std::vector<double> objective(options_.n_directions);
  if (mode_ == Mode::kExploit) {
    for (std::size_t d = 0; d < options_.n_directions; ++d) objective[d] = scores[d].fitness();
  } else {
    std::vector<Descriptor> archive;
    archive.reserve(repertoire.occupied_count());
    for (std::size_t cell : repertoire.occupied_cells()) {
      archive.push_back(repertoire.cell(cell)->descriptor);
    }
    for (std::size_t d = 0; d < options_.n_directions; ++d) {
      objective[d] = novelty_score(scores[d].descriptor, archive, options_.k_novelty);
    }
  }

  const std::vector<double> gradient =
      es_gradient_estimate(directions, objective, options_.step_size);
  for (std::size_t c = 0; c < search_point_.size(); ++c) {
    search_point_[c] += options_.learning_rate * gradient[c];
  }
  clip_to_bounds(search_point_, spec.lower, spec.upper);

  if (++generations_in_mode_ >= options_.explore_period) {
    mode_ = (mode_ == Mode::kExploit) ? Mode::kExplore : Mode::kExploit;
    generations_in_mode_ = 0;
  }
  return search_point_;
}

std::vector<Genotype> EsEmitter::emit(const Repertoire& repertoire, std::size_t count,
                                      RngStream& rng, ThreadPool& pool) {
  std::vector<Genotype> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(step_once(repertoire, rng, pool));
  }
  return out;
}

}  // namespace qdkit
