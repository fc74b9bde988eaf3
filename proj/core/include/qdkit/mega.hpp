#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qdkit/cmaes.hpp"
#include "qdkit/cmame.hpp"
#include "qdkit/emitter.hpp"

namespace qdkit {

/// Fitness gradient plus descriptor gradient rows, each normalized to unit
/// Euclidean norm (zero rows stay zero). Row 0 is the fitness direction,
/// row 1+j the j-th descriptor direction.
std::vector<std::vector<double>> normalized_gradient_rows(const Task& task,
                                                          std::span<const double> x);

/// One gradient-arborescence offspring: x + c0 * grad_f_hat +
/// sum_j c[1+j] * grad_d_j_hat, clipped to bounds. Coefficients are drawn
/// from N(0, sigma_g^2 I) with c0 forced non-negative.
Genotype omg_mega_offspring(std::span<const double> x,
                            std::span<const std::vector<double>> gradient_rows,
                            std::span<const double> coefficients, std::span<const double> lower,
                            std::span<const double> upper);

/// Gradient-only emitter: each offspring perturbs a uniformly sampled elite
/// along its normalized fitness and descriptor gradients with Gaussian
/// coefficients. Requires a differentiable task.
class OmgMegaEmitter : public Emitter {
 public:
  OmgMegaEmitter(const Task& task, double sigma_g);

  std::vector<Genotype> emit(const Repertoire& repertoire, std::size_t count, RngStream& rng,
                             ThreadPool& pool) override;

 private:
  const Task* task_;
  double sigma_g_;
};

struct CmaMegaOptions {
  std::size_t lambda = 0;  // 0 -> default for coefficient dimension
  double sigma_g = 10.0;   // initial coefficient step size
  double step_rate = 1.0;  // eta on the anchor update
};

/// CMA-MEGA: a CMA-ES over gradient coefficients steers offspring around a
/// moving anchor point; the anchor follows the weighted mean of the best
/// coefficient steps and restarts from a sampled elite when a batch fails
/// to improve the archive.
class CmaMegaEmitter : public Emitter {
 public:
  CmaMegaEmitter(const Task& task, CmaMegaOptions options);

  std::vector<Genotype> emit(const Repertoire& repertoire, std::size_t count, RngStream& rng,
                             ThreadPool& pool) override;
  void observe(const Repertoire& before_add, std::span<const Genotype> batch,
               std::span<const ScoringResult> scores) override;
  void advance(const Repertoire& after_add, std::span<const Genotype> batch,
               std::span<const ScoringResult> scores, std::span<const AddResult> outcomes,
               RngStream& rng) override;

  const Genotype& anchor() const { return anchor_; }

 private:
  void restart_from(const Repertoire& repertoire, RngStream& rng);

  const Task* task_;
  CmaMegaOptions options_;
  std::size_t coeff_dims_;
  std::optional<CmaesState> state_;
  Genotype anchor_;
  std::vector<std::vector<double>> gradient_rows_;
  std::vector<std::vector<double>> pending_coefficients_;
  std::vector<std::size_t> pending_ranking_;
  bool pending_improved_ = false;
};

}  // namespace qdkit
