#ifndef HECKEQ_DATASET_HPP
#define HECKEQ_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "heckeq/spectra.hpp"

namespace heckeq::ingest {

// JSON Lines dataset: one header object, then one record object per line.
// Record fields: level, weight, char (object or label string), p, lambda
// or ap = [re, im], optional field_degree, form_id. See README for the
// full schema.
struct DatasetHeader {
  int schema = 1;
  std::string source = "unknown";
  bool complete = true;
  std::string branch;  // must match the artifact's branch convention
  // optional dim S_k^new per space, keyed "<level>:<weight>:<char_label>"
  std::map<std::string, std::size_t> dims;
};

struct DatasetFile {
  DatasetHeader header;
  std::vector<spectra::EigenRecord> records;
  std::vector<std::string> warnings;  // non-fatal notes gathered on load
};

// Parses and validates; every offending line is collected and reported in
// one aggregated DataError (line numbers + reasons).
DatasetFile parse_dataset_text(const std::string& text,
                               const std::string& origin = "<memory>");
DatasetFile parse_dataset(const std::filesystem::path& path);

std::string serialize(const DatasetFile& ds);
void write_dataset(const DatasetFile& ds, const std::filesystem::path& path);

// Records grouped into per-space multisets (normalizing raw a_p entries on
// the way). Group order follows first appearance in the file.
std::vector<spectra::EigenMultiset> group_multisets(
    const DatasetFile& ds, double im_tol = spectra::kDefaultImTol,
    double edge_tol = spectra::kDefaultEdgeTol);

std::string space_dim_key(std::uint64_t level, std::int64_t weight,
                          const std::string& char_label);

}  // namespace heckeq::ingest

#endif
