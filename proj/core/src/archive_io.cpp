#include "qdkit/archive_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qdkit/error.hpp"

namespace qdkit {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json layout_to_json(const CellLayout& layout) {
  json container;
  if (layout.is_grid()) {
    const GridSpec& g = layout.grid();
    container["type"] = "grid";
    container["dims"] = g.dims;
    container["lower"] = g.lower;
    container["upper"] = g.upper;
  } else {
    const CvtSpec& c = layout.cvt();
    container["type"] = "cvt";
    container["centroids"] = c.centroids;
    container["lower"] = c.lower;
    container["upper"] = c.upper;
  }
  return container;
}

CellLayout layout_from_json(const json& container) {
  const std::string type = container.at("type").get<std::string>();
  if (type == "grid") {
    GridSpec g;
    g.dims = container.at("dims").get<std::vector<std::size_t>>();
    g.lower = container.at("lower").get<std::vector<double>>();
    g.upper = container.at("upper").get<std::vector<double>>();
    return CellLayout(std::move(g));
  }
  if (type == "cvt") {
    CvtSpec c;
    c.centroids = container.at("centroids").get<std::vector<std::vector<double>>>();
    c.lower = container.at("lower").get<std::vector<double>>();
    c.upper = container.at("upper").get<std::vector<double>>();
    return CellLayout(std::move(c));
  }
  throw FileParseError("archive: unknown container type '" + type + "'", 0);
}

json archive_to_json(const Archive& archive) {
  json doc;
  doc["format_version"] = kFormatVersion;
  if (const auto* rep = std::get_if<Repertoire>(&archive)) {
    doc["container"] = layout_to_json(rep->layout());
    json cells = json::array();
    std::vector<std::size_t> ids(rep->occupied_cells().begin(), rep->occupied_cells().end());
    std::sort(ids.begin(), ids.end());
    for (std::size_t id : ids) {
      const Elite& e = *rep->cell(id);
      cells.push_back({{"cell", id},
                       {"genotype", e.genotype},
                       {"fitness", e.fitness},
                       {"descriptor", e.descriptor}});
    }
    doc["cells"] = std::move(cells);
  } else if (const auto* mome = std::get_if<MomeArchive>(&archive)) {
    json container = layout_to_json(mome->repertoire.layout());
    container["front_capacity"] = mome->repertoire.front_capacity();
    container["reference"] = mome->reference;
    doc["container"] = std::move(container);
    json cells = json::array();
    std::vector<std::size_t> ids(mome->repertoire.occupied_cells().begin(),
                                 mome->repertoire.occupied_cells().end());
    std::sort(ids.begin(), ids.end());
    for (std::size_t id : ids) {
      for (const MoElite& e : mome->repertoire.cell(id)) {
        cells.push_back({{"cell", id},
                         {"genotype", e.genotype},
                         {"objectives", e.objectives},
                         {"descriptor", e.descriptor}});
      }
    }
    doc["cells"] = std::move(cells);
  } else {
    const auto& pop = std::get<PopulationArchive>(archive);
    doc["container"] = {{"type", "population"},
                        {"capacity", pop.capacity},
                        {"reference", pop.reference}};
    json cells = json::array();
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
      cells.push_back({{"cell", i},
                       {"genotype", pop.members[i].genotype},
                       {"objectives", pop.members[i].objectives}});
    }
    doc["cells"] = std::move(cells);
  }
  return doc;
}

Archive archive_from_json(const json& doc) {
  const auto version = doc.at("format_version").get<int>();
  if (version != kFormatVersion) {
    throw FormatVersionError("archive: unsupported format_version " + std::to_string(version));
  }
  const json& container = doc.at("container");
  const std::string type = container.at("type").get<std::string>();

  if (type == "population") {
    PopulationArchive pop;
    pop.capacity = container.at("capacity").get<std::size_t>();
    pop.reference = container.at("reference").get<std::vector<double>>();
    for (const json& cell : doc.at("cells")) {
      pop.members.push_back(Individual{cell.at("genotype").get<Genotype>(),
                                       cell.at("objectives").get<Objectives>()});
    }
    return pop;
  }

  CellLayout layout = layout_from_json(container);
  if (container.contains("front_capacity")) {
    MomeArchive mome;
    mome.repertoire =
        MomeRepertoire(std::move(layout), container.at("front_capacity").get<std::size_t>());
    mome.reference = container.at("reference").get<std::vector<double>>();
    for (const json& cell : doc.at("cells")) {
      ScoringResult score;
      score.objectives = cell.at("objectives").get<Objectives>();
      score.descriptor = cell.at("descriptor").get<Descriptor>();
      mome.repertoire.add(cell.at("genotype").get<Genotype>(), score);
    }
    return mome;
  }

  Repertoire rep(std::move(layout));
  for (const json& cell : doc.at("cells")) {
    ScoringResult score;
    score.objectives = {cell.at("fitness").get<double>()};
    score.descriptor = cell.at("descriptor").get<Descriptor>();
    rep.add(cell.at("genotype").get<Genotype>(), score);
  }
  return rep;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("rename failed for " + path + ": " + ec.message());
  }
}

json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FileParseError(std::string("parse error in ") + path + ": " + e.what(), e.byte);
  }
}

}  // namespace

void save_archive(const Archive& archive, const std::string& path) {
  atomic_write(path, archive_to_json(archive).dump());
}

Archive load_archive(const std::string& path) {
  const json doc = parse_file(path);
  try {
    return archive_from_json(doc);
  } catch (const FormatVersionError&) {
    throw;
  } catch (const json::exception& e) {
    throw FileParseError(std::string("archive structure error in ") + path + ": " + e.what(), 0);
  }
}

void save_centroids(const std::vector<std::vector<double>>& centroids, const std::string& path) {
  atomic_write(path, json(centroids).dump());
}

std::vector<std::vector<double>> load_centroids(const std::string& path) {
  const json doc = parse_file(path);
  try {
    return doc.get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    throw FileParseError(std::string("centroid file error in ") + path + ": " + e.what(), 0);
  }
}

}  // namespace qdkit
