#include "qdkit/task.hpp"

#include <cmath>
#include <numbers>

#include "qdkit/error.hpp"

namespace qdkit {

namespace {

constexpr double kBoxHalfWidth = 5.12;  // sphere / rastrigin domain
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_input(const TaskSpec& spec, std::span<const double> x) {
  if (x.size() != spec.n_params) {
    throw ScoringError(spec.name + ": expected " + std::to_string(spec.n_params) +
                       " parameters, got " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || x[i] < spec.lower[i] || x[i] > spec.upper[i]) {
      throw ScoringError(spec.name + ": parameter " + std::to_string(i) + " out of bounds");
    }
  }
}

// First two coordinates mapped to [0,1]^2; shared by sphere and rastrigin.
Descriptor box_descriptor(std::span<const double> x) {
  return {(x[0] + kBoxHalfWidth) / (2.0 * kBoxHalfWidth),
          (x[1] + kBoxHalfWidth) / (2.0 * kBoxHalfWidth)};
}

std::vector<std::vector<double>> box_descriptor_gradients(std::size_t n) {
  std::vector<std::vector<double>> rows(2, std::vector<double>(n, 0.0));
  rows[0][0] = 1.0 / (2.0 * kBoxHalfWidth);
  rows[1][1] = 1.0 / (2.0 * kBoxHalfWidth);
  return rows;
}

double sphere_fitness(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return -s;
}

double rastrigin_fitness(std::span<const double> x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(kTwoPi * v);
  return -s;
}

ScoringResult eval_sphere(const TaskSpec& spec, std::span<const double> x) {
  check_input(spec, x);
  ScoringResult r;
  r.objectives = {sphere_fitness(x)};
  r.descriptor = box_descriptor(x);
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = -2.0 * x[i];
  r.fitness_gradient = std::move(grad);
  r.descriptor_gradients = box_descriptor_gradients(x.size());
  return r;
}

ScoringResult eval_rastrigin(const TaskSpec& spec, std::span<const double> x) {
  check_input(spec, x);
  ScoringResult r;
  r.objectives = {rastrigin_fitness(x)};
  r.descriptor = box_descriptor(x);
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    grad[i] = -(2.0 * x[i] + 20.0 * std::numbers::pi * std::sin(kTwoPi * x[i]));
  }
  r.fitness_gradient = std::move(grad);
  r.descriptor_gradients = box_descriptor_gradients(x.size());
  return r;
}

// Planar arm with n unit links of length 1/n. Joint angles are
// theta_i = 2*pi*(x_i - 0.5); the descriptor is the end-effector position
// mapped into [0,1]^2 and the fitness penalizes joint-angle spread.
ScoringResult eval_arm(const TaskSpec& spec, std::span<const double> x) {
  check_input(spec, x);
  const std::size_t n = x.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> cum_sin(n), cum_cos(n);
  double alpha = 0.0;
  double ex = 0.0, ey = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    alpha += kTwoPi * (x[k] - 0.5);
    cum_cos[k] = std::cos(alpha);
    cum_sin[k] = std::sin(alpha);
    ex += cum_cos[k];
    ey += cum_sin[k];
  }
  ex *= inv_n;
  ey *= inv_n;

  double mean = 0.0;
  for (double v : x) mean += v;
  mean *= inv_n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var *= inv_n;
  const double stddev = std::sqrt(var);

  ScoringResult r;
  r.objectives = {-stddev};
  r.descriptor = {(ex + 1.0) / 2.0, (ey + 1.0) / 2.0};

  // d e / d x_i via suffix sums: alpha_k depends on x_i for all k >= i.
  std::vector<std::vector<double>> drows(2, std::vector<double>(n, 0.0));
  double suf_sin = 0.0, suf_cos = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    suf_sin += cum_sin[i];
    suf_cos += cum_cos[i];
    drows[0][i] = 0.5 * inv_n * kTwoPi * (-suf_sin);
    drows[1][i] = 0.5 * inv_n * kTwoPi * suf_cos;
  }
  r.descriptor_gradients = std::move(drows);

  std::vector<double> fgrad(n, 0.0);
  if (stddev > 0.0) {
    for (std::size_t i = 0; i < n; ++i) fgrad[i] = -(x[i] - mean) * inv_n / stddev;
  }
  r.fitness_gradient = std::move(fgrad);
  return r;
}

// Bi-objective pair (sphere, rastrigin) on the shared domain.
ScoringResult eval_sphere_rastrigin(const TaskSpec& spec, std::span<const double> x) {
  check_input(spec, x);
  ScoringResult r;
  r.objectives = {sphere_fitness(x), rastrigin_fitness(x)};
  r.descriptor = box_descriptor(x);
  return r;
}

// Schaffer problem: maximize (-x1^2, -(x1-2)^2). Pareto set is x1 in [0, 2].
ScoringResult eval_schaffer(const TaskSpec& spec, std::span<const double> x) {
  check_input(spec, x);
  ScoringResult r;
  r.objectives = {-x[0] * x[0], -(x[0] - 2.0) * (x[0] - 2.0)};
  r.descriptor = {(x[0] - spec.lower[0]) / (spec.upper[0] - spec.lower[0])};
  return r;
}

TaskSpec box_spec(std::string name, std::size_t n, std::size_t n_objectives) {
  TaskSpec s;
  s.name = std::move(name);
  s.n_params = n;
  s.lower.assign(n, -kBoxHalfWidth);
  s.upper.assign(n, kBoxHalfWidth);
  s.descriptor_dims = 2;
  s.descriptor_lower = {0.0, 0.0};
  s.descriptor_upper = {1.0, 1.0};
  s.n_objectives = n_objectives;
  return s;
}

double sphere_floor(std::size_t n) { return -static_cast<double>(n) * kBoxHalfWidth * kBoxHalfWidth; }

double rastrigin_floor(std::size_t n) {
  // Per coordinate, x^2 - 10 cos(2 pi x) <= 5.12^2 + 10 over the domain.
  return -static_cast<double>(n) * (10.0 + kBoxHalfWidth * kBoxHalfWidth + 10.0);
}

}  // namespace

ScoringResult Task::evaluate(std::span<const double> x) const { return eval_(spec_, x); }

std::pair<std::vector<double>, std::vector<std::vector<double>>> Task::gradients(
    std::span<const double> x) const {
  if (!spec_.differentiable) {
    throw ConfigError(spec_.name + ": task does not provide gradients");
  }
  ScoringResult r = evaluate(x);
  return {std::move(*r.fitness_gradient), std::move(*r.descriptor_gradients)};
}

Task make_task(const std::string& name, std::size_t n_params) {
  if (name == "sphere" || name == "rastrigin" || name == "sphere_rastrigin") {
    if (n_params < 2) throw ConfigError(name + ": requires n_params >= 2");
    if (name == "sphere") {
      TaskSpec s = box_spec(name, n_params, 1);
      s.differentiable = true;
      s.fitness_floor = {sphere_floor(n_params)};
      return Task(std::move(s), &eval_sphere);
    }
    if (name == "rastrigin") {
      TaskSpec s = box_spec(name, n_params, 1);
      s.differentiable = true;
      s.fitness_floor = {rastrigin_floor(n_params)};
      return Task(std::move(s), &eval_rastrigin);
    }
    TaskSpec s = box_spec(name, n_params, 2);
    s.fitness_floor = {sphere_floor(n_params), rastrigin_floor(n_params)};
    return Task(std::move(s), &eval_sphere_rastrigin);
  }
  if (name == "arm") {
    if (n_params < 1) throw ConfigError("arm: requires n_params >= 1");
    TaskSpec s;
    s.name = name;
    s.n_params = n_params;
    s.lower.assign(n_params, 0.0);
    s.upper.assign(n_params, 1.0);
    s.descriptor_dims = 2;
    s.descriptor_lower = {0.0, 0.0};
    s.descriptor_upper = {1.0, 1.0};
    s.differentiable = true;
    s.n_objectives = 1;
    s.fitness_floor = {-0.5};  // population stddev of values in [0,1] is at most 1/2
    return Task(std::move(s), &eval_arm);
  }
  if (name == "schaffer") {
    if (n_params < 1) throw ConfigError("schaffer: requires n_params >= 1");
    TaskSpec s;
    s.name = name;
    s.n_params = n_params;
    s.lower.assign(n_params, -5.0);
    s.upper.assign(n_params, 5.0);
    s.descriptor_dims = 1;
    s.descriptor_lower = {0.0};
    s.descriptor_upper = {1.0};
    s.n_objectives = 2;
    s.fitness_floor = {-25.0, -49.0};
    return Task(std::move(s), &eval_schaffer);
  }
  throw ConfigError("unknown task: " + name);
}

}  // namespace qdkit
