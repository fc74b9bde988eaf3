#include "qdkit/cvt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdkit/error.hpp"

namespace qdkit {

CvtSpec compute_cvt_centroids(std::size_t k, std::span<const double> lower,
                              std::span<const double> upper, RngStream& rng,
                              ThreadPool& pool, const CvtParams& params) {
  if (k < 1) throw InvalidArgument("compute_cvt_centroids: k must be >= 1");
  if (params.n_samples < k) {
    throw InvalidArgument("compute_cvt_centroids: need at least k samples");
  }
  const std::size_t dims = lower.size();

  std::vector<std::vector<double>> samples(params.n_samples, std::vector<double>(dims));
  for (auto& s : samples) {
    for (std::size_t j = 0; j < dims; ++j) s[j] = rng.uniform(lower[j], upper[j]);
  }

  std::vector<std::vector<double>> centroids(samples.begin(),
                                             samples.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<std::size_t> assignment(params.n_samples, 0);

  for (std::size_t iter = 0; iter < params.lloyd_iterations; ++iter) {
    pool.parallel_for(params.n_samples, [&](std::size_t i) {
      const auto& s = samples[i];
      std::size_t best = 0;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < dims; ++j) {
          const double d = s[j] - centroids[c][j];
          d2 += d * d;
        }
        if (d2 < best_d2) {
          best_d2 = d2;
          best = c;
        }
      }
      assignment[i] = best;
    });

    // Sequential accumulation keeps the result independent of worker count.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dims, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < params.n_samples; ++i) {
      const std::size_t c = assignment[i];
      ++counts[c];
      for (std::size_t j = 0; j < dims; ++j) sums[c][j] += samples[i][j];
    }

    double max_shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // keep an empty cluster's centroid in place
      double shift2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        const double updated = sums[c][j] / static_cast<double>(counts[c]);
        const double d = updated - centroids[c][j];
        shift2 += d * d;
        centroids[c][j] = updated;
      }
      max_shift = std::max(max_shift, std::sqrt(shift2));
    }
    if (max_shift < params.shift_tolerance) break;
  }

  CvtSpec spec;
  spec.centroids = std::move(centroids);
  spec.lower.assign(lower.begin(), lower.end());
  spec.upper.assign(upper.begin(), upper.end());
  return spec;
}

}  // namespace qdkit
