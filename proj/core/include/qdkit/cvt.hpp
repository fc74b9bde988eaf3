#pragma once

#include <cstddef>
#include <vector>

#include "qdkit/container.hpp"
#include "qdkit/rng.hpp"
#include "qdkit/thread_pool.hpp"

namespace qdkit {

struct CvtParams {
  std::size_t n_samples = 100000;
  std::size_t lloyd_iterations = 50;
  double shift_tolerance = 1e-6;
};

/// Builds k centroids by running Lloyd's k-means on uniform samples drawn
/// inside the bounds, initialized from the first k samples. Deterministic in
/// the rng: the nearest-centroid searches may run on the pool, but all
/// floating-point accumulation happens in sample-index order.
CvtSpec compute_cvt_centroids(std::size_t k, std::span<const double> lower,
                              std::span<const double> upper, RngStream& rng,
                              ThreadPool& pool, const CvtParams& params = {});

}  // namespace qdkit
