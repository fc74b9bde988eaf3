#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qdkit/container.hpp"
#include "qdkit/population.hpp"

namespace qdkit {

/// Final population of NSGA-II / SPEA2 plus the hypervolume reference it
/// was measured against, in archive-file form.
struct PopulationArchive {
  std::size_t capacity = 0;
  std::vector<double> reference;
  Population members;

  bool operator==(const PopulationArchive&) const = default;
};

/// A MOME repertoire travels with its reference point so that stored
/// archives stay evaluable on their own.
struct MomeArchive {
  MomeRepertoire repertoire;
  std::vector<double> reference;

  bool operator==(const MomeArchive&) const = default;
};

using Archive = std::variant<Repertoire, MomeArchive, PopulationArchive>;

/// Writes an archive as JSON (format_version 1) atomically: the file is
/// staged next to `path` and renamed into place, so failures never leave a
/// partial archive behind.
void save_archive(const Archive& archive, const std::string& path);

/// Loads an archive saved by save_archive. Throws FormatVersionError for an
/// unknown format_version, FileParseError (with byte offset) for undecodable
/// content, and IoError if the file cannot be read.
Archive load_archive(const std::string& path);

/// Centroid files: a JSON array of k rows of descriptor-space coordinates.
void save_centroids(const std::vector<std::vector<double>>& centroids, const std::string& path);
std::vector<std::vector<double>> load_centroids(const std::string& path);

}  // namespace qdkit
