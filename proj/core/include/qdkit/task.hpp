#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qdkit {

/// Solution representation: a fixed-length real vector inside the task's box.
using Genotype = std::vector<double>;
using Descriptor = std::vector<double>;

/// Everything a scoring function reports about one solution. `objectives`
/// has one entry for single-objective tasks. Gradients are populated only
/// when the task is differentiable: `fitness_gradient` is d objectives[0]/dx
/// and `descriptor_gradients[j]` is d descriptor[j]/dx.
struct ScoringResult {
  std::vector<double> objectives;
  Descriptor descriptor;
  std::optional<std::vector<double>> fitness_gradient;
  std::optional<std::vector<std::vector<double>>> descriptor_gradients;

  double fitness() const { return objectives.front(); }
};

struct TaskSpec {
  std::string name;
  std::size_t n_params = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t descriptor_dims = 0;
  std::vector<double> descriptor_lower;
  std::vector<double> descriptor_upper;
  bool differentiable = false;
  std::size_t n_objectives = 1;
  /// Safe lower bound on attainable fitness over the domain, one entry per
  /// objective. Used as the default QD-score offset (single objective) and
  /// as the default hypervolume reference point (multi objective).
  std::vector<double> fitness_floor;
};

/// A benchmark problem: pure scoring function plus its metadata. Evaluation
/// of an in-bounds genotype is deterministic and reentrant.
class Task {
 public:
  using EvalFn = ScoringResult (*)(const TaskSpec&, std::span<const double>);

  Task() = default;
  Task(TaskSpec spec, EvalFn eval) : spec_(std::move(spec)), eval_(eval) {}

  const TaskSpec& spec() const { return spec_; }

  /// Scores one genotype. Throws ScoringError if x is outside the task box
  /// or has the wrong length.
  ScoringResult evaluate(std::span<const double> x) const;

  /// Analytic gradients of fitness and descriptor. Throws ConfigError for
  /// non-differentiable tasks.
  std::pair<std::vector<double>, std::vector<std::vector<double>>> gradients(
      std::span<const double> x) const;

 private:
  TaskSpec spec_;
  EvalFn eval_ = nullptr;
};

/// Builds a task by name: "sphere", "rastrigin", "arm", "sphere_rastrigin"
/// (bi-objective), "schaffer" (bi-objective, analytic Pareto set).
/// Throws ConfigError for unknown names or invalid dimension.
Task make_task(const std::string& name, std::size_t n_params);

}  // namespace qdkit
