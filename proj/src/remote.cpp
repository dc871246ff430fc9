#include "heckeq/remote.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "heckeq/errors.hpp"
#include "heckeq/factorization.hpp"
#include "heckeq/numtheory.hpp"

namespace heckeq::ingest {

using nlohmann::json;

namespace {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

struct ParsedUrl {
  std::string scheme_host_port;  // "http://host:port"
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw DomainError("remote url must start with http:// : " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos)
    return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string http_get(const std::string& url, const std::string& query,
                     int max_retries) {
  ParsedUrl parsed = split_url(url);
  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt < std::max(1, max_retries); ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
    httplib::Client client(parsed.scheme_host_port);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(10, 0);
    auto res = client.Get(parsed.path + "?" + query);
    if (!res) {
      last_error = "connection failed (" + httplib::to_string(res.error()) +
                   ")";
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    return res->body;
  }
  throw TransportError("fetch " + url + "?" + query + " failed after " +
                       std::to_string(max_retries) + " attempt(s): " +
                       last_error);
}

void write_atomic(const std::filesystem::path& path,
                  const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw TransportError("cache: cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

// Remote payload -> dataset JSONL under this build's schema, so the
// existing parser performs all validation.
std::string payload_to_jsonl(const std::string& payload,
                             const SpaceQuery& query,
                             const RemoteOptions& opts) {
  json doc;
  try {
    doc = json::parse(payload);
  } catch (const json::exception& e) {
    throw DataError(std::string("remote payload is not valid JSON: ") +
                    e.what());
  }
  if (!doc.contains(opts.records_path) || !doc[opts.records_path].is_array())
    throw DataError("remote payload has no '" + opts.records_path +
                    "' array");
  json header{{"schema", 1},
              {"source", "remote:" + opts.url},
              {"complete", doc.value("complete", false)},
              {"branch", chars::kBranchConvention}};
  std::string out = header.dump() + "\n";
  for (const auto& r : doc[opts.records_path]) {
    json rec;
    if (!r.contains(opts.field_level) || !r.contains(opts.field_weight))
      throw DataError("remote record is missing level/weight fields");
    rec["level"] = r.at(opts.field_level);
    rec["weight"] = r.at(opts.field_weight);
    rec["p"] = r.value("p", query.p);
    if (r.contains(opts.field_char))
      rec["char"] = r.at(opts.field_char);
    else if (query.character)
      rec["char"] = query.character->to_json();
    else
      throw DataError("remote record carries no character and the query "
                      "does not pin one");
    if (r.contains(opts.field_lambda)) rec["lambda"] = r.at(opts.field_lambda);
    if (r.contains(opts.field_ap)) rec["ap"] = r.at(opts.field_ap);
    if (r.contains(opts.field_degree))
      rec["field_degree"] = r.at(opts.field_degree);
    if (r.contains(opts.field_form_id))
      rec["form_id"] = r.at(opts.field_form_id);
    out += rec.dump() + "\n";
  }
  return out;
}

}  // namespace

std::string SpaceQuery::query_string() const {
  std::string q = "level_min=" + std::to_string(level_min) +
                  "&level_max=" + std::to_string(level_max) +
                  "&weight_min=" + std::to_string(weight_min) +
                  "&weight_max=" + std::to_string(weight_max) +
                  "&p=" + std::to_string(p);
  if (character)
    q += "&char=" + character->label();
  else if (!char_constraint.empty())
    q += "&char=" + char_constraint;
  return q;
}

RemoteOptions RemoteOptions::from_config(const Config& cfg) {
  RemoteOptions opts;
  opts.url = cfg.get("remote.url", "");
  opts.cache_dir = cfg.get("cache.dir", opts.cache_dir.string());
  opts.max_retries = static_cast<int>(cfg.get_double("remote.retries", 3));
  opts.records_path = cfg.get("remote.records", opts.records_path);
  opts.field_level = cfg.get("remote.field.level", opts.field_level);
  opts.field_weight = cfg.get("remote.field.weight", opts.field_weight);
  opts.field_char = cfg.get("remote.field.char", opts.field_char);
  opts.field_lambda = cfg.get("remote.field.lambda", opts.field_lambda);
  opts.field_ap = cfg.get("remote.field.ap", opts.field_ap);
  opts.field_degree = cfg.get("remote.field.degree", opts.field_degree);
  opts.field_form_id = cfg.get("remote.field.form_id", opts.field_form_id);
  if (const char* url = std::getenv("HECKEQ_REMOTE_URL")) opts.url = url;
  if (const char* dir = std::getenv("HECKEQ_CACHE_DIR")) opts.cache_dir = dir;
  if (const char* off = std::getenv("HECKEQ_OFFLINE"))
    opts.offline = std::string(off) == "1" || std::string(off) == "true";
  return opts;
}

std::filesystem::path cache_entry_path(const SpaceQuery& query,
                                       const RemoteOptions& opts) {
  return opts.cache_dir /
         (fnv1a_hex(opts.url + "?" + query.query_string()) + ".json");
}

DatasetFile fetch_remote(const SpaceQuery& query, const RemoteOptions& opts) {
  // Exceptional spaces are empty for every weight; answer locally.
  if (query.character) {
    auto facN = nt::factorize(query.character->modulus());
    auto facF = nt::factorize(query.character->conductor());
    if (nt::is_exceptional(facN, facF)) {
      DatasetFile ds;
      ds.header.source = "remote:" + opts.url;
      ds.header.branch = chars::kBranchConvention;
      ds.header.complete = true;
      ds.warnings.push_back(
          "query matches the exceptional case 2 | f(chi), 2 || N/f(chi): "
          "dim S_k^new(N,k,chi) = 0, no records exist");
      return ds;
    }
  }

  auto entry = cache_entry_path(query, opts);
  std::string payload;
  bool from_cache = false;
  if (std::filesystem::exists(entry)) {
    std::ifstream in(entry, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    payload = ss.str();
    from_cache = true;
  } else if (opts.offline) {
    throw TransportError("offline mode and no cache entry for query " +
                         query.query_string());
  } else {
    if (opts.url.empty())
      throw TransportError("no remote url configured (remote.url / "
                           "HECKEQ_REMOTE_URL)");
    payload = http_get(opts.url, query.query_string(), opts.max_retries);
  }

  // Validate before caching so a malformed payload cannot poison the cache.
  std::string jsonl = payload_to_jsonl(payload, query, opts);
  DatasetFile ds = parse_dataset_text(jsonl, "remote");
  if (!from_cache) write_atomic(entry, payload);
  return ds;
}

}  // namespace heckeq::ingest
