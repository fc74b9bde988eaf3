#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qdkit {

/// Objective vector under the maximization convention.
using Objectives = std::vector<double>;

/// True iff a weakly dominates b on every objective and strictly on at
/// least one. Throws InvalidArgument on dimension mismatch.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Partitions points into non-dominated fronts: front 0 holds the maximal
/// elements, front r the maximal elements once fronts < r are removed.
/// Every index appears in exactly one front.
std::vector<std::vector<std::size_t>> non_dominated_sort(
    std::span<const Objectives> points);

/// NSGA-II crowding distance over one mutually non-dominated front.
/// Boundary points per objective get +inf; an objective with zero range
/// contributes nothing.
std::vector<double> crowding_distance(std::span<const Objectives> front);

struct Spea2Components {
  std::vector<double> strength;  // number of points each point dominates
  std::vector<double> raw;       // sum of strengths of dominators
  std::vector<double> density;   // 1 / (sigma_k + 2)
};

/// SPEA2 strength/raw/density decomposition; fitness = raw + density,
/// lower is better. k is the neighbor index for the density estimate.
Spea2Components spea2_components(std::span<const Objectives> points, std::size_t k);

std::vector<double> spea2_fitness(std::span<const Objectives> points, std::size_t k);

}  // namespace qdkit
