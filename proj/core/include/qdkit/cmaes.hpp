#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "qdkit/rng.hpp"

namespace qdkit {

/// Strategy constants for (mu/mu_w, lambda) covariance matrix adaptation,
/// derived from the problem dimension and population size with the standard
/// defaults (positive recombination weights).
struct CmaesParams {
  std::size_t n = 0;
  std::size_t lambda = 0;
  std::size_t mu = 0;
  std::vector<double> weights;  // size mu, sums to 1
  double mu_eff = 0.0;
  double c_sigma = 0.0;
  double d_sigma = 0.0;
  double c_c = 0.0;
  double c1 = 0.0;
  double c_mu = 0.0;
  double chi_n = 0.0;  // E||N(0, I)||

  static std::size_t default_lambda(std::size_t n);
  static CmaesParams defaults(std::size_t n, std::size_t lambda);
};

/// One CMA-ES search distribution. `ask` samples candidates; `tell` updates
/// mean, step size, covariance, and both evolution paths from a caller-
/// supplied ranking (best first), which keeps the optimizer agnostic to the
/// objective's sign convention.
class CmaesState {
 public:
  CmaesState() = default;
  CmaesState(std::vector<double> mean, double sigma, CmaesParams params);

  const CmaesParams& params() const { return params_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  double sigma() const { return sigma_; }
  const Eigen::MatrixXd& covariance() const { return cov_; }
  std::size_t generation() const { return generation_; }

  /// Smallest/largest covariance eigenvalue ratio; used for restart checks.
  double condition_number() const;

  /// Draws `count` samples from N(mean, sigma^2 C). The count is usually
  /// params().lambda but any count >= 1 is valid (e.g. a truncated final
  /// batch). Throws EmitterError if the covariance has become non-finite.
  std::vector<std::vector<double>> ask(std::size_t count, RngStream& rng) const;

  /// Applies the rank-based update. `ranking` is a permutation of sample
  /// indices, best candidate first; its length must equal params().lambda.
  void tell(std::span<const std::vector<double>> samples,
            std::span<const std::size_t> ranking);

 private:
  void refresh_eigen();

  CmaesParams params_;
  Eigen::VectorXd mean_;
  double sigma_ = 0.0;
  Eigen::MatrixXd cov_;
  Eigen::VectorXd path_sigma_;
  Eigen::VectorXd path_c_;
  std::size_t generation_ = 0;

  // Cached eigendecomposition of cov_ (refreshed after every tell).
  Eigen::MatrixXd eigen_basis_;
  Eigen::VectorXd eigen_scale_;  // sqrt of (clamped) eigenvalues
};

}  // namespace qdkit
