#include "qdkit/cmaes.hpp"

#include <cmath>

#include "qdkit/error.hpp"

namespace qdkit {

namespace {

constexpr double kMinEigenvalue = 1e-30;

}  // namespace

std::size_t CmaesParams::default_lambda(std::size_t n) {
  return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(n))));
}

CmaesParams CmaesParams::defaults(std::size_t n, std::size_t lambda) {
  if (n < 1) throw InvalidArgument("CmaesParams: dimension must be >= 1");
  if (lambda < 2) throw InvalidArgument("CmaesParams: lambda must be >= 2");
  CmaesParams p;
  p.n = n;
  p.lambda = lambda;
  p.mu = lambda / 2;
  const double nd = static_cast<double>(n);

  std::vector<double> raw(p.mu);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.mu; ++i) {
    raw[i] = std::log((static_cast<double>(lambda) + 1.0) / 2.0) -
             std::log(static_cast<double>(i + 1));
    sum += raw[i];
  }
  p.weights.resize(p.mu);
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < p.mu; ++i) {
    p.weights[i] = raw[i] / sum;
    sum_sq += p.weights[i] * p.weights[i];
  }
  p.mu_eff = 1.0 / sum_sq;

  p.c_sigma = (p.mu_eff + 2.0) / (nd + p.mu_eff + 5.0);
  p.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((p.mu_eff - 1.0) / (nd + 1.0)) - 1.0) + p.c_sigma;
  p.c_c = (4.0 + p.mu_eff / nd) / (nd + 4.0 + 2.0 * p.mu_eff / nd);
  p.c1 = 2.0 / ((nd + 1.3) * (nd + 1.3) + p.mu_eff);
  p.c_mu = std::min(1.0 - p.c1, 2.0 * (p.mu_eff - 2.0 + 1.0 / p.mu_eff) /
                                    ((nd + 2.0) * (nd + 2.0) + p.mu_eff));
  p.chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));
  return p;
}

CmaesState::CmaesState(std::vector<double> mean, double sigma, CmaesParams params)
    : params_(std::move(params)),
      mean_(Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()))),
      sigma_(sigma),
      cov_(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(params_.n),
                                     static_cast<Eigen::Index>(params_.n))),
      path_sigma_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params_.n))),
      path_c_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params_.n))) {
  if (mean_.size() != static_cast<Eigen::Index>(params_.n)) {
    throw InvalidArgument("CmaesState: mean dimension mismatch");
  }
  if (!(sigma_ > 0.0)) throw InvalidArgument("CmaesState: sigma must be positive");
  refresh_eigen();
}

void CmaesState::refresh_eigen() {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov_);
  if (solver.info() != Eigen::Success) {
    throw EmitterError("CmaesState: covariance eigendecomposition failed");
  }
  eigen_basis_ = solver.eigenvectors();
  Eigen::VectorXd values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    values[i] = std::max(values[i], kMinEigenvalue);
  }
  eigen_scale_ = values.cwiseSqrt();
}

double CmaesState::condition_number() const {
  const double lo = eigen_scale_.minCoeff();
  const double hi = eigen_scale_.maxCoeff();
  return (hi * hi) / (lo * lo);
}

std::vector<std::vector<double>> CmaesState::ask(std::size_t count, RngStream& rng) const {
  if (count < 1) throw InvalidArgument("CmaesState::ask: count must be >= 1");
  if (!mean_.allFinite() || !eigen_scale_.allFinite()) {
    throw EmitterError("CmaesState::ask: search distribution is not finite");
  }
  const auto n = static_cast<Eigen::Index>(params_.n);
  std::vector<std::vector<double>> samples(count);
  Eigen::VectorXd z(n);
  for (auto& sample : samples) {
    for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.next_normal();
    const Eigen::VectorXd x = mean_ + sigma_ * (eigen_basis_ * (eigen_scale_.asDiagonal() * z));
    sample.assign(x.data(), x.data() + n);
  }
  return samples;
}

void CmaesState::tell(std::span<const std::vector<double>> samples,
                      std::span<const std::size_t> ranking) {
  if (samples.size() != params_.lambda) {
    throw InvalidArgument("CmaesState::tell: expected lambda samples");
  }
  if (ranking.size() != samples.size()) {
    throw InvalidArgument("CmaesState::tell: ranking size mismatch");
  }
  const auto n = static_cast<Eigen::Index>(params_.n);

  // y_i = (x_(i) - m) / sigma for the mu best candidates.
  Eigen::MatrixXd y(n, static_cast<Eigen::Index>(params_.mu));
  for (std::size_t r = 0; r < params_.mu; ++r) {
    const auto& x = samples[ranking[r]];
    for (Eigen::Index i = 0; i < n; ++i) {
      y(i, static_cast<Eigen::Index>(r)) = (x[static_cast<std::size_t>(i)] - mean_[i]) / sigma_;
    }
  }
  Eigen::VectorXd y_w = Eigen::VectorXd::Zero(n);
  for (std::size_t r = 0; r < params_.mu; ++r) {
    y_w += params_.weights[r] * y.col(static_cast<Eigen::Index>(r));
  }

  mean_ += sigma_ * y_w;

  // C^(-1/2) y_w from the cached decomposition.
  const Eigen::VectorXd whitened =
      eigen_basis_ * (eigen_scale_.cwiseInverse().asDiagonal() * (eigen_basis_.transpose() * y_w));
  path_sigma_ = (1.0 - params_.c_sigma) * path_sigma_ +
                std::sqrt(params_.c_sigma * (2.0 - params_.c_sigma) * params_.mu_eff) * whitened;

  const double path_norm = path_sigma_.norm();
  const double expected = std::sqrt(
      1.0 - std::pow(1.0 - params_.c_sigma, 2.0 * static_cast<double>(generation_ + 1)));
  const bool h_sigma =
      path_norm / expected < (1.4 + 2.0 / (static_cast<double>(params_.n) + 1.0)) * params_.chi_n;

  path_c_ = (1.0 - params_.c_c) * path_c_;
  if (h_sigma) {
    path_c_ += std::sqrt(params_.c_c * (2.0 - params_.c_c) * params_.mu_eff) * y_w;
  }

  const double delta_h = h_sigma ? 0.0 : params_.c_c * (2.0 - params_.c_c);
  Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t r = 0; r < params_.mu; ++r) {
    const auto col = y.col(static_cast<Eigen::Index>(r));
    rank_mu.noalias() += params_.weights[r] * (col * col.transpose());
  }
  cov_ = (1.0 + params_.c1 * delta_h - params_.c1 - params_.c_mu) * cov_ +
         params_.c1 * (path_c_ * path_c_.transpose()) + params_.c_mu * rank_mu;
  cov_ = 0.5 * (cov_ + cov_.transpose().eval());  // keep exact symmetry

  sigma_ *= std::exp((params_.c_sigma / params_.d_sigma) * (path_norm / params_.chi_n - 1.0));
  ++generation_;
  refresh_eigen();
}

}  // namespace qdkit
