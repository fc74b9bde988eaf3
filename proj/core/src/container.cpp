#include "qdkit/container.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdkit/error.hpp"

namespace qdkit {

std::size_t GridSpec::cell_count() const {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

std::size_t grid_cell_index(std::span<const double> descriptor, const GridSpec& spec) {
  if (descriptor.size() != spec.dims.size()) {
    throw ScoringError("grid_cell_index: descriptor dimension mismatch");
  }
  std::size_t id = 0;
  for (std::size_t axis = 0; axis < spec.dims.size(); ++axis) {
    const double d = descriptor[axis];
    if (!std::isfinite(d)) throw ScoringError("grid_cell_index: non-finite descriptor");
    const double rel = (d - spec.lower[axis]) / (spec.upper[axis] - spec.lower[axis]);
    const double scaled = std::floor(rel * static_cast<double>(spec.dims[axis]));
    std::size_t idx = 0;
    if (scaled > 0.0) {
      idx = std::min(static_cast<std::size_t>(scaled), spec.dims[axis] - 1);
    }
    id = id * spec.dims[axis] + idx;
  }
  return id;
}

std::size_t cvt_cell_index(std::span<const double> descriptor, const CvtSpec& spec) {
  if (spec.centroids.empty()) throw InvalidArgument("cvt_cell_index: no centroids");
  if (descriptor.size() != spec.centroids[0].size()) {
    throw ScoringError("cvt_cell_index: descriptor dimension mismatch");
  }
  for (double d : descriptor) {
    if (!std::isfinite(d)) throw ScoringError("cvt_cell_index: non-finite descriptor");
  }
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.centroids.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < descriptor.size(); ++j) {
      const double diff = descriptor[j] - spec.centroids[i][j];
      d2 += diff * diff;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

std::size_t CellLayout::cell_count() const {
  return std::visit([](const auto& s) { return s.cell_count(); }, spec_);
}

std::size_t CellLayout::descriptor_dims() const {
  if (is_grid()) return grid().dims.size();
  return cvt().centroids.empty() ? 0 : cvt().centroids[0].size();
}

std::size_t CellLayout::cell_of(std::span<const double> descriptor) const {
  if (is_grid()) return grid_cell_index(descriptor, grid());
  return cvt_cell_index(descriptor, cvt());
}

Repertoire::Repertoire(CellLayout layout)
    : layout_(std::move(layout)), cells_(layout_.cell_count()) {}

AddResult Repertoire::add(Genotype genotype, const ScoringResult& score) {
  const std::size_t id = layout_.cell_of(score.descriptor);
  auto& slot = cells_[id];
  if (!slot.has_value()) {
    slot = Elite{std::move(genotype), score.fitness(), score.descriptor};
    occupied_.push_back(id);
    return AddResult::kNewCell;
  }
  if (score.fitness() > slot->fitness) {
    slot = Elite{std::move(genotype), score.fitness(), score.descriptor};
    return AddResult::kImproved;
  }
  return AddResult::kRejected;
}

std::vector<AddResult> Repertoire::add_batch(std::span<const Genotype> batch,
                                             std::span<const ScoringResult> scores) {
  std::vector<AddResult> results;
  results.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    results.push_back(add(batch[i], scores[i]));
  }
  return results;
}

std::vector<Genotype> Repertoire::sample(std::size_t count, RngStream& rng) const {
  std::vector<Genotype> out;
  if (count == 0) return out;
  if (occupied_.empty()) throw EmitterError("sample: repertoire is empty");
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(cells_[sample_cell(rng)]->genotype);
  }
  return out;
}

std::size_t Repertoire::sample_cell(RngStream& rng) const {
  if (occupied_.empty()) throw EmitterError("sample_cell: repertoire is empty");
  return occupied_[rng.uniform_index(occupied_.size())];
}

bool mome_cell_add(std::vector<MoElite>& front, MoElite candidate, std::size_t capacity) {
  if (capacity < 1) throw ConfigError("mome_cell_add: front capacity must be >= 1");
  for (const MoElite& member : front) {
    if (dominates(member.objectives, candidate.objectives)) return false;
  }
  std::erase_if(front, [&](const MoElite& member) {
    return dominates(candidate.objectives, member.objectives);
  });
  front.push_back(std::move(candidate));
  if (front.size() > capacity) {
    std::vector<Objectives> objs;
    objs.reserve(front.size());
    for (const MoElite& member : front) objs.push_back(member.objectives);
    const std::vector<double> crowd = crowding_distance(objs);
    std::size_t evict = 0;
    for (std::size_t i = 1; i < crowd.size(); ++i) {
      if (crowd[i] < crowd[evict]) evict = i;
    }
    front.erase(front.begin() + static_cast<std::ptrdiff_t>(evict));
  }
  return true;
}

MomeRepertoire::MomeRepertoire(CellLayout layout, std::size_t front_capacity)
    : layout_(std::move(layout)), fronts_(layout_.cell_count()), front_capacity_(front_capacity) {
  if (front_capacity_ < 1) throw ConfigError("MomeRepertoire: front capacity must be >= 1");
}

bool MomeRepertoire::add(Genotype genotype, const ScoringResult& score) {
  const std::size_t id = layout_.cell_of(score.descriptor);
  auto& front = fronts_[id];
  const bool was_empty = front.empty();
  const bool changed = mome_cell_add(
      front, MoElite{std::move(genotype), score.objectives, score.descriptor}, front_capacity_);
  if (was_empty && !front.empty()) occupied_.push_back(id);
  return changed;
}

std::vector<Genotype> MomeRepertoire::sample(std::size_t count, RngStream& rng) const {
  std::vector<Genotype> out;
  if (count == 0) return out;
  if (occupied_.empty()) throw EmitterError("sample: repertoire is empty");
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& front = fronts_[occupied_[rng.uniform_index(occupied_.size())]];
    out.push_back(front[rng.uniform_index(front.size())].genotype);
  }
  return out;
}

}  // namespace qdkit
