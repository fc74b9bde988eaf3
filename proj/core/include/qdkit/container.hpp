#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qdkit/pareto.hpp"
#include "qdkit/rng.hpp"
#include "qdkit/task.hpp"

namespace qdkit {

/// Uniform grid over descriptor space; dims[i] cells along axis i.
struct GridSpec {
  std::vector<std::size_t> dims;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t cell_count() const;
  bool operator==(const GridSpec&) const = default;
};

/// Centroidal Voronoi tessellation: one cell per centroid.
struct CvtSpec {
  std::vector<std::vector<double>> centroids;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t cell_count() const { return centroids.size(); }
  bool operator==(const CvtSpec&) const = default;
};

/// Axis index = floor((d_i - lower_i) / (upper_i - lower_i) * dims_i),
/// clamped to the valid range; cell id is the row-major flattening.
/// Throws ScoringError on non-finite descriptor components.
std::size_t grid_cell_index(std::span<const double> descriptor, const GridSpec& spec);

/// Index of the Euclidean-nearest centroid; ties go to the lowest index.
std::size_t cvt_cell_index(std::span<const double> descriptor, const CvtSpec& spec);

/// Either container geometry behind one cell_of() lookup.
class CellLayout {
 public:
  CellLayout() = default;
  explicit CellLayout(GridSpec grid) : spec_(std::move(grid)) {}
  explicit CellLayout(CvtSpec cvt) : spec_(std::move(cvt)) {}

  std::size_t cell_count() const;
  std::size_t descriptor_dims() const;
  std::size_t cell_of(std::span<const double> descriptor) const;

  bool is_grid() const { return std::holds_alternative<GridSpec>(spec_); }
  const GridSpec& grid() const { return std::get<GridSpec>(spec_); }
  const CvtSpec& cvt() const { return std::get<CvtSpec>(spec_); }
  bool operator==(const CellLayout&) const = default;

 private:
  std::variant<GridSpec, CvtSpec> spec_;
};

struct Elite {
  Genotype genotype;
  double fitness = 0.0;
  Descriptor descriptor;

  bool operator==(const Elite&) const = default;
};

/// What happened to one candidate during addition.
enum class AddResult { kNewCell, kImproved, kRejected };

/// Single-objective archive: at most one elite per cell, replaced only on
/// strict fitness improvement (ties keep the incumbent). Mutation is owned
/// by the optimization loop; reads are safe from any thread in between.
class Repertoire {
 public:
  Repertoire() = default;
  explicit Repertoire(CellLayout layout);

  const CellLayout& layout() const { return layout_; }
  std::size_t cell_count() const { return cells_.size(); }
  std::size_t occupied_count() const { return occupied_.size(); }
  bool empty() const { return occupied_.empty(); }

  const std::optional<Elite>& cell(std::size_t cell_id) const { return cells_[cell_id]; }

  /// Cell ids with an occupant, in first-insertion order.
  std::span<const std::size_t> occupied_cells() const { return occupied_; }

  AddResult add(Genotype genotype, const ScoringResult& score);
  std::vector<AddResult> add_batch(std::span<const Genotype> batch,
                                   std::span<const ScoringResult> scores);

  /// `count` genotypes drawn uniformly with replacement from occupied cells.
  /// Throws EmitterError when the repertoire is empty and count > 0.
  std::vector<Genotype> sample(std::size_t count, RngStream& rng) const;

  /// Uniform draw of one occupied cell id.
  std::size_t sample_cell(RngStream& rng) const;

  /// Structural equality: layout and cell contents. The first-insertion
  /// order of occupied cells is bookkeeping, not archive state.
  bool operator==(const Repertoire& other) const {
    return layout_ == other.layout_ && cells_ == other.cells_;
  }

 private:
  CellLayout layout_;
  std::vector<std::optional<Elite>> cells_;
  std::vector<std::size_t> occupied_;
};

struct MoElite {
  Genotype genotype;
  Objectives objectives;
  Descriptor descriptor;

  bool operator==(const MoElite&) const = default;
};

/// Inserts a candidate into one cell's Pareto front. Dominated candidates
/// are dropped; otherwise the candidate enters, members it dominates leave,
/// and a capacity overflow evicts the member with the smallest crowding
/// distance (ties: lowest index). Returns true if the front changed.
bool mome_cell_add(std::vector<MoElite>& front, MoElite candidate, std::size_t capacity);

/// Multi-objective archive: each cell holds a bounded Pareto front.
class MomeRepertoire {
 public:
  MomeRepertoire() = default;
  MomeRepertoire(CellLayout layout, std::size_t front_capacity);

  const CellLayout& layout() const { return layout_; }
  std::size_t front_capacity() const { return front_capacity_; }
  std::size_t cell_count() const { return fronts_.size(); }
  std::size_t occupied_count() const { return occupied_.size(); }
  bool empty() const { return occupied_.empty(); }

  const std::vector<MoElite>& cell(std::size_t cell_id) const { return fronts_[cell_id]; }
  std::span<const std::size_t> occupied_cells() const { return occupied_; }

  /// True if the candidate changed its cell's front.
  bool add(Genotype genotype, const ScoringResult& score);

  /// Uniform over occupied cells, then uniform over that cell's front.
  std::vector<Genotype> sample(std::size_t count, RngStream& rng) const;

  bool operator==(const MomeRepertoire& other) const {
    return layout_ == other.layout_ && fronts_ == other.fronts_ &&
           front_capacity_ == other.front_capacity_;
  }

 private:
  CellLayout layout_;
  std::vector<std::vector<MoElite>> fronts_;
  std::vector<std::size_t> occupied_;
  std::size_t front_capacity_ = 0;
};

}  // namespace qdkit
