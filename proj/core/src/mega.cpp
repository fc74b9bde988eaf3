#include "qdkit/mega.hpp"

#include <cmath>

#include "qdkit/error.hpp"

namespace qdkit {

namespace {

void normalize_in_place(std::vector<double>& v) {
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (norm2 == 0.0) return;
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : v) x *= inv;
}

}  // namespace

std::vector<std::vector<double>> normalized_gradient_rows(const Task& task,
                                                          std::span<const double> x) {
  auto [fitness_grad, descriptor_grads] = task.gradients(x);
  std::vector<std::vector<double>> rows;
  rows.reserve(1 + descriptor_grads.size());
  normalize_in_place(fitness_grad);
  rows.push_back(std::move(fitness_grad));
  for (auto& row : descriptor_grads) {
    normalize_in_place(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

Genotype omg_mega_offspring(std::span<const double> x,
                            std::span<const std::vector<double>> gradient_rows,
                            std::span<const double> coefficients, std::span<const double> lower,
                            std::span<const double> upper) {
  if (coefficients.size() != gradient_rows.size()) {
    throw InvalidArgument("omg_mega_offspring: coefficient count mismatch");
  }
  Genotype child(x.begin(), x.end());
  for (std::size_t r = 0; r < gradient_rows.size(); ++r) {
    const double c = coefficients[r];
    for (std::size_t i = 0; i < child.size(); ++i) child[i] += c * gradient_rows[r][i];
  }
  clip_to_bounds(child, lower, upper);
  return child;
}

OmgMegaEmitter::OmgMegaEmitter(const Task& task, double sigma_g)
    : task_(&task), sigma_g_(sigma_g) {
  if (!task.spec().differentiable) {
    throw ConfigError("OmgMegaEmitter: task does not provide gradients");
  }
}

std::vector<Genotype> OmgMegaEmitter::emit(const Repertoire& repertoire, std::size_t count,
                                           RngStream& rng, ThreadPool& pool) {
  if (count == 0) return {};
  if (repertoire.empty()) throw EmitterError("OmgMegaEmitter: repertoire is empty");
  const TaskSpec& spec = task_->spec();
  const std::size_t coeff_dims = 1 + spec.descriptor_dims;

  std::vector<RngStream> streams = split_rng(rng, count);
  std::vector<Genotype> batch(count);
  pool.parallel_for(count, [&](std::size_t i) {
    RngStream local = streams[i];
    const std::size_t cell = repertoire.sample_cell(local);
    const Genotype& parent = repertoire.cell(cell)->genotype;
    const auto rows = normalized_gradient_rows(*task_, parent);
    std::vector<double> coeff(coeff_dims);
    for (double& c : coeff) c = sigma_g_ * local.next_normal();
    coeff[0] = std::abs(coeff[0]);  // never step against the fitness gradient
    batch[i] = omg_mega_offspring(parent, rows, coeff, spec.lower, spec.upper);
  });
  return batch;
}

CmaMegaEmitter::CmaMegaEmitter(const Task& task, CmaMegaOptions options)
    : task_(&task), options_(options), coeff_dims_(1 + task.spec().descriptor_dims) {
  if (!task.spec().differentiable) {
    throw ConfigError("CmaMegaEmitter: task does not provide gradients");
  }
  if (options_.lambda == 0) options_.lambda = CmaesParams::default_lambda(coeff_dims_);
}

void CmaMegaEmitter::restart_from(const Repertoire& repertoire, RngStream& rng) {
  if (repertoire.empty()) throw EmitterError("CmaMegaEmitter: restart on empty repertoire");
  anchor_ = repertoire.cell(repertoire.sample_cell(rng))->genotype;
  state_.emplace(std::vector<double>(coeff_dims_, 0.0), options_.sigma_g,
                 CmaesParams::defaults(coeff_dims_, options_.lambda));
}

std::vector<Genotype> CmaMegaEmitter::emit(const Repertoire& repertoire, std::size_t count,
                                           RngStream& rng, ThreadPool& pool) {
  (void)pool;
  if (count == 0) return {};
  if (!state_.has_value()) restart_from(repertoire, rng);
  const TaskSpec& spec = task_->spec();
  gradient_rows_ = normalized_gradient_rows(*task_, anchor_);
  pending_coefficients_ = state_->ask(count, rng);
  std::vector<Genotype> batch(count);
  for (std::size_t i = 0; i < count; ++i) {
    batch[i] = omg_mega_offspring(anchor_, gradient_rows_, pending_coefficients_[i], spec.lower,
                                  spec.upper);
  }
  return batch;
}

void CmaMegaEmitter::observe(const Repertoire& before_add, std::span<const Genotype> batch,
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

void CmaMegaEmitter::advance(const Repertoire& after_add, std::span<const Genotype> batch,
                             std::span<const ScoringResult> scores,
                             std::span<const AddResult> outcomes, RngStream& rng) {
  (void)scores;
  (void)outcomes;
  if (batch.size() == state_->params().lambda) {
    state_->tell(pending_coefficients_, pending_ranking_);

    // Anchor follows the weight-averaged coefficient step along the frozen
    // gradient rows.
    const CmaesParams& p = state_->params();
    std::vector<double> mean_coeff(coeff_dims_, 0.0);
    for (std::size_t r = 0; r < p.mu; ++r) {
      const auto& c = pending_coefficients_[pending_ranking_[r]];
      for (std::size_t j = 0; j < coeff_dims_; ++j) mean_coeff[j] += p.weights[r] * c[j];
    }
    const TaskSpec& spec = task_->spec();
    for (std::size_t j = 0; j < coeff_dims_; ++j) {
      const double step = options_.step_rate * mean_coeff[j];
      for (std::size_t i = 0; i < anchor_.size(); ++i) {
        anchor_[i] += step * gradient_rows_[j][i];
      }
    }
    clip_to_bounds(anchor_, spec.lower, spec.upper);
  }
  if (!pending_improved_) {
    restart_from(after_add, rng);
  }
}

}  // namespace qdkit
