#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdkit/container.hpp"
#include "qdkit/pareto.hpp"

namespace qdkit {

/// One per-iteration measurement row. wall_time_ms is always written as 0
/// in artifacts: run outputs are bit-reproducible across hosts and worker
/// counts, so timing is reported on stderr instead.
struct MetricsRecord {
  std::size_t iteration = 0;
  std::size_t evaluations = 0;
  double qd_score = 0.0;
  double coverage = 0.0;
  std::optional<double> max_fitness;
  double wall_time_ms = 0.0;
};

struct ArchiveMetrics {
  double qd_score = 0.0;
  double coverage = 0.0;
  std::optional<double> max_fitness;
};

/// QD score (sum of fitness - offset over occupied cells), coverage
/// (occupied / total), and best fitness. Empty archive: (0, 0, absent).
ArchiveMetrics compute_metrics(const Repertoire& repertoire, double qd_offset);

/// Area dominated by a 2-D front relative to `reference` (maximization).
/// Dominated and duplicate points contribute nothing. Throws on dimension
/// != 2 or a point below the reference on any axis.
double hypervolume(std::span<const Objectives> front, std::span<const double> reference);

/// MOME archive metrics: qd_score sums per-cell front hypervolumes against
/// the fixed reference; max_fitness is the best single-cell hypervolume.
ArchiveMetrics compute_mome_metrics(const MomeRepertoire& repertoire,
                                    std::span<const double> reference);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

/// Append-only CSV sink for metrics rows. Writes the fixed header on the
/// first row. Single-writer.
class MetricsCsvWriter {
 public:
  static constexpr const char* kHeader =
      "iteration,evaluations,qd_score,coverage,max_fitness,wall_time_ms";

  explicit MetricsCsvWriter(const std::string& path);

  void append(const MetricsRecord& record);

 private:
  std::ofstream out_;
  bool header_written_ = false;
};

}  // namespace qdkit
