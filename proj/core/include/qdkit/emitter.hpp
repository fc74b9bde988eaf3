#pragma once

#include <memory>
#include <span>
#include <vector>

#include "qdkit/container.hpp"
#include "qdkit/rng.hpp"
#include "qdkit/scoring.hpp"
#include "qdkit/task.hpp"
#include "qdkit/thread_pool.hpp"

namespace qdkit {

/// Proposal strategy advanced once per step by the optimization loop.
///
/// Step protocol: emit() produces the batch; after scoring, observe() sees
/// the batch against the pre-addition repertoire (for improvement-based
/// rankings); advance() then updates internal state against the
/// post-addition repertoire. Emitters may parallelize emission internally
/// provided the emitted order is deterministic.
class Emitter {
 public:
  virtual ~Emitter() = default;

  virtual std::vector<Genotype> emit(const Repertoire& repertoire, std::size_t count,
                                     RngStream& rng, ThreadPool& pool) = 0;

  virtual void observe(const Repertoire& before_add, std::span<const Genotype> batch,
                       std::span<const ScoringResult> scores) {
    (void)before_add;
    (void)batch;
    (void)scores;
  }

  virtual void advance(const Repertoire& after_add, std::span<const Genotype> batch,
                       std::span<const ScoringResult> scores,
                       std::span<const AddResult> outcomes, RngStream& rng) {
    (void)after_add;
    (void)batch;
    (void)scores;
    (void)outcomes;
    (void)rng;
  }
};

struct IsolineParams {
  double sigma_iso = 0.0;   // std-dev of the isotropic component, absolute units
  double sigma_line = 0.0;  // std-dev of the scalar along the parent difference
};

/// Iso+line variation: x1 + sigma_iso * eps + sigma_line * eta * (x2 - x1),
/// clipped per component to [lower, upper]. eps is a standard normal vector
/// and eta a standard normal scalar.
Genotype isoline_variation(std::span<const double> x1, std::span<const double> x2,
                           const IsolineParams& params, std::span<const double> lower,
                           std::span<const double> upper, RngStream& rng);

/// GA emitter: offspring from iso+line variation of two archive parents
/// sampled uniformly. Per-candidate rng streams keep parallel emission
/// deterministic.
class IsolineEmitter : public Emitter {
 public:
  IsolineEmitter(IsolineParams params, std::vector<double> lower, std::vector<double> upper)
      : params_(params), lower_(std::move(lower)), upper_(std::move(upper)) {}

  std::vector<Genotype> emit(const Repertoire& repertoire, std::size_t count, RngStream& rng,
                             ThreadPool& pool) override;

 private:
  IsolineParams params_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Splits each batch across sub-emitters by fixed proportions (largest
/// remainder apportionment). Emission order is sub-emitter index first,
/// then the sub-emitter's own order.
class CompoundEmitter : public Emitter {
 public:
  CompoundEmitter(std::vector<std::unique_ptr<Emitter>> emitters, std::vector<double> proportions);

  std::vector<Genotype> emit(const Repertoire& repertoire, std::size_t count, RngStream& rng,
                             ThreadPool& pool) override;
  void observe(const Repertoire& before_add, std::span<const Genotype> batch,
               std::span<const ScoringResult> scores) override;
  void advance(const Repertoire& after_add, std::span<const Genotype> batch,
               std::span<const ScoringResult> scores, std::span<const AddResult> outcomes,
               RngStream& rng) override;

  /// Candidate counts per sub-emitter for a batch of `count`.
  std::vector<std::size_t> shares(std::size_t count) const;

 private:
  std::vector<std::unique_ptr<Emitter>> emitters_;
  std::vector<double> proportions_;
  std::vector<std::size_t> last_shares_;
};

/// Clips every component into [lower, upper].
void clip_to_bounds(Genotype& x, std::span<const double> lower, std::span<const double> upper);

}  // namespace qdkit
