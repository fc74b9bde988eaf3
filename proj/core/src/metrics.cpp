#include "qdkit/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "qdkit/error.hpp"

namespace qdkit {

ArchiveMetrics compute_metrics(const Repertoire& repertoire, double qd_offset) {
  ArchiveMetrics m;
  if (repertoire.cell_count() == 0) return m;
  for (std::size_t cell : repertoire.occupied_cells()) {
    const double f = repertoire.cell(cell)->fitness;
    m.qd_score += f - qd_offset;
    if (!m.max_fitness || f > *m.max_fitness) m.max_fitness = f;
  }
  m.coverage = static_cast<double>(repertoire.occupied_count()) /
               static_cast<double>(repertoire.cell_count());
  return m;
}

double hypervolume(std::span<const Objectives> front, std::span<const double> reference) {
  if (reference.size() != 2) {
    throw InvalidArgument("hypervolume: only two objectives are supported");
  }
  if (front.empty()) return 0.0;
  for (const Objectives& p : front) {
    if (p.size() != 2) throw InvalidArgument("hypervolume: only two objectives are supported");
    if (p[0] < reference[0] || p[1] < reference[1]) {
      throw InvalidArgument("hypervolume: point below the reference point");
    }
  }
  // Sweep by first objective descending; each point adds the rectangle to
  // its right above everything already covered.
  std::vector<const Objectives*> sorted;
  sorted.reserve(front.size());
  for (const Objectives& p : front) sorted.push_back(&p);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Objectives* a, const Objectives* b) {
    return (*a)[0] > (*b)[0];
  });
  double area = 0.0;
  double covered_y = reference[1];
  for (const Objectives* p : sorted) {
    if ((*p)[1] > covered_y) {
      area += ((*p)[0] - reference[0]) * ((*p)[1] - covered_y);
      covered_y = (*p)[1];
    }
  }
  return area;
}

ArchiveMetrics compute_mome_metrics(const MomeRepertoire& repertoire,
                                    std::span<const double> reference) {
  ArchiveMetrics m;
  if (repertoire.cell_count() == 0) return m;
  for (std::size_t cell : repertoire.occupied_cells()) {
    std::vector<Objectives> objs;
    objs.reserve(repertoire.cell(cell).size());
    for (const MoElite& e : repertoire.cell(cell)) objs.push_back(e.objectives);
    const double hv = hypervolume(objs, reference);
    m.qd_score += hv;
    if (!m.max_fitness || hv > *m.max_fitness) m.max_fitness = hv;
  }
  m.coverage = static_cast<double>(repertoire.occupied_count()) /
               static_cast<double>(repertoire.cell_count());
  return m;
}

std::string format_double(double value) {
  char buffer[64];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, res.ptr);
}

MetricsCsvWriter::MetricsCsvWriter(const std::string& path) : out_(path, std::ios::trunc) {
  if (!out_) throw IoError("cannot open metrics file: " + path);
}

void MetricsCsvWriter::append(const MetricsRecord& record) {
  if (!header_written_) {
    out_ << kHeader << '\n';
    header_written_ = true;
  }
  out_ << record.iteration << ',' << record.evaluations << ',' << format_double(record.qd_score)
       << ',' << format_double(record.coverage) << ','
       << (record.max_fitness ? format_double(*record.max_fitness) : std::string())
       << ',' << format_double(record.wall_time_ms) << '\n';
  out_.flush();
  if (!out_) throw IoError("metrics write failed");
}

}  // namespace qdkit
