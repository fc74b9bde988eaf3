#include "qdkit/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qdkit/error.hpp"

namespace qdkit {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("dominates: objective dimension mismatch");
  }
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(
    std::span<const Objectives> points) {
  if (points.empty()) throw InvalidArgument("non_dominated_sort: empty input");
  const std::size_t n = points.size();

  // Fast non-dominated sort: count dominators and track dominated sets.
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> dominated_by(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated_by[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(points[j], points[i])) {
        dominated_by[j].push_back(i);
        ++domination_count[i];
      }
    }
  }

  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated_by[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> front) {
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n == 0) return distance;
  const std::size_t m = front[0].size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), kInf);
    return distance;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a][obj] < front[b][obj];
    });
    const double range = front[order.back()][obj] - front[order.front()][obj];
    distance[order.front()] = kInf;
    distance[order.back()] = kInf;
    if (range <= 0.0) continue;
    for (std::size_t r = 1; r + 1 < n; ++r) {
      distance[order[r]] += (front[order[r + 1]][obj] - front[order[r - 1]][obj]) / range;
    }
  }
  return distance;
}

Spea2Components spea2_components(std::span<const Objectives> points, std::size_t k) {
  if (k < 1) throw InvalidArgument("spea2_components: k must be >= 1");
  const std::size_t n = points.size();
  Spea2Components c;
  c.strength.assign(n, 0.0);
  c.raw.assign(n, 0.0);
  c.density.assign(n, 0.0);

  std::vector<std::vector<bool>> dom(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && dominates(points[i], points[j])) {
        dom[i][j] = true;
        c.strength[i] += 1.0;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dom[j][i]) c.raw[i] += c.strength[j];
    }
  }

  std::vector<double> dists;
  for (std::size_t i = 0; i < n; ++i) {
    dists.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d2 = 0.0;
      for (std::size_t o = 0; o < points[i].size(); ++o) {
        const double d = points[i][o] - points[j][o];
        d2 += d * d;
      }
      dists.push_back(std::sqrt(d2));
    }
    double sigma_k = 0.0;
    if (!dists.empty()) {
      const std::size_t idx = std::min(k, dists.size()) - 1;
      std::nth_element(dists.begin(), dists.begin() + idx, dists.end());
      sigma_k = dists[idx];
    }
    c.density[i] = 1.0 / (sigma_k + 2.0);
  }
  return c;
}

std::vector<double> spea2_fitness(std::span<const Objectives> points, std::size_t k) {
  Spea2Components c = spea2_components(points, k);
  std::vector<double> fitness(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) fitness[i] = c.raw[i] + c.density[i];
  return fitness;
}

}  // namespace qdkit
