#ifndef HECKEQ_REMOTE_HPP
#define HECKEQ_REMOTE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "heckeq/config.hpp"
#include "heckeq/dataset.hpp"

namespace heckeq::ingest {

// Query against a modular-forms database HTTP API. When `character` is
// supplied the level is pinned to its modulus; exceptional spaces
// (2 | f(chi), 2 || N/f(chi)) short-circuit to an empty dataset since
// dim S_k^new(N, k, chi) = 0 for every weight.
struct SpaceQuery {
  std::uint64_t level_min = 1;
  std::uint64_t level_max = 1;
  std::int64_t weight_min = 2;
  std::int64_t weight_max = 2;
  std::uint64_t p = 2;
  std::optional<chars::DirichletCharacter> character;
  std::string char_constraint;  // opaque label passed through to the server

  std::string query_string() const;  // canonical, sorted parameters
};

// Endpoint and field mapping are configuration, not code constants; public
// API schemas drift. Defaults below match the committed test fixtures.
struct RemoteOptions {
  std::string url;  // e.g. "http://127.0.0.1:8080/api/newforms"
  std::filesystem::path cache_dir = ".heckeq-cache";
  bool offline = false;
  int max_retries = 3;
  std::string records_path = "records";
  std::string field_level = "level";
  std::string field_weight = "weight";
  std::string field_char = "char";
  std::string field_lambda = "lambda";
  std::string field_ap = "ap";
  std::string field_degree = "field_degree";
  std::string field_form_id = "form_id";

  // Reads remote.* / cache.* keys and HECKEQ_REMOTE_URL, HECKEQ_CACHE_DIR,
  // HECKEQ_OFFLINE environment overrides.
  static RemoteOptions from_config(const Config& cfg);
};

// Fetch (or replay from cache) and assemble a validated dataset. Cache
// entries are content-addressed by a hash of url + query string, written
// atomically, and never overwritten; a payload that fails validation is
// not cached.
DatasetFile fetch_remote(const SpaceQuery& query, const RemoteOptions& opts);

// Exposed for tests: the cache file a query maps to.
std::filesystem::path cache_entry_path(const SpaceQuery& query,
                                       const RemoteOptions& opts);

}  // namespace heckeq::ingest

#endif
