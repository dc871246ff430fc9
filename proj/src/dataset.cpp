#include "heckeq/dataset.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "heckeq/errors.hpp"
#include "heckeq/factorization.hpp"

namespace heckeq::ingest {

using nlohmann::json;

namespace {

spectra::EigenRecord record_from_json(
    const json& j,
    std::map<std::string, std::shared_ptr<const chars::DirichletCharacter>>&
        char_cache) {
  spectra::EigenRecord rec;
  rec.level = j.at("level").get<std::uint64_t>();
  rec.weight = j.at("weight").get<std::int64_t>();
  rec.p = j.at("p").get<std::uint64_t>();
  if (j.contains("form_id")) rec.form_id = j.at("form_id").get<std::string>();

  const auto& ch = j.at("char");
  if (ch.is_string()) {
    rec.char_label = ch.get<std::string>();
  } else {
    std::string key = ch.dump();
    auto it = char_cache.find(key);
    if (it == char_cache.end()) {
      auto chi = std::make_shared<const chars::DirichletCharacter>(
          chars::DirichletCharacter::from_json(ch));
      it = char_cache.emplace(key, std::move(chi)).first;
    }
    rec.character = it->second;
    rec.char_label = rec.character->label();
  }

  if (j.contains("lambda")) rec.lambda = j.at("lambda").get<double>();
  if (j.contains("ap")) {
    const auto& ap = j.at("ap");
    if (!ap.is_array() || ap.size() != 2)
      throw DataError("field 'ap' must be [re, im]");
    rec.ap = std::complex<double>(ap[0].get<double>(), ap[1].get<double>());
  }
  if (j.contains("field_degree"))
    rec.field_degree = j.at("field_degree").get<int>();
  return rec;
}

void validate_record(const spectra::EigenRecord& rec) {
  if (rec.level == 0) throw DataError("level must be positive");
  if (rec.weight < 2) throw DataError("weight must be >= 2");
  if (!nt::is_prime(rec.p))
    throw DataError("p = " + std::to_string(rec.p) + " is not prime");
  if (rec.level % rec.p == 0)
    throw DataError("p divides N (p = " + std::to_string(rec.p) +
                    ", N = " + std::to_string(rec.level) + ")");
  if (rec.character) {
    if (rec.character->modulus() != rec.level)
      throw DataError("character modulus " +
                      std::to_string(rec.character->modulus()) +
                      " does not match level " + std::to_string(rec.level));
    int want = rec.weight % 2 == 0 ? 1 : -1;
    if (rec.character->parity() != want)
      throw DataError("chi(-1) != (-1)^k for weight " +
                      std::to_string(rec.weight));
  }
  if (!rec.lambda && !rec.ap)
    throw DataError("record carries neither lambda nor ap");
  // exercises the full normalization path: range, imaginary residue and
  // the lambda/ap cross-check
  spectra::normalize(rec);
}

json record_to_json(const spectra::EigenRecord& rec) {
  json j;
  j["level"] = rec.level;
  j["weight"] = rec.weight;
  if (rec.character)
    j["char"] = rec.character->to_json();
  else
    j["char"] = rec.char_label;
  j["p"] = rec.p;
  if (rec.lambda) j["lambda"] = *rec.lambda;
  if (rec.ap) j["ap"] = {rec.ap->real(), rec.ap->imag()};
  if (rec.field_degree) j["field_degree"] = *rec.field_degree;
  if (!rec.form_id.empty()) j["form_id"] = rec.form_id;
  return j;
}

}  // namespace

std::string space_dim_key(std::uint64_t level, std::int64_t weight,
                          const std::string& char_label) {
  return std::to_string(level) + ":" + std::to_string(weight) + ":" +
         char_label;
}

DatasetFile parse_dataset_text(const std::string& text,
                               const std::string& origin) {
  DatasetFile ds;
  std::vector<std::string> errors;
  auto fail = [&](int lineno, const std::string& why) {
    errors.push_back(origin + ":" + std::to_string(lineno) + ": " + why);
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  std::map<std::string, std::shared_ptr<const chars::DirichletCharacter>>
      char_cache;
  std::set<std::string> seen_keys;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail(lineno, std::string("malformed JSON: ") + e.what());
      continue;
    }
    if (!have_header) {
      have_header = true;
      try {
        if (!j.contains("schema"))
          throw DataError("header is missing the schema field");
        int schema = j.at("schema").get<int>();
        if (schema != 1)
          throw DataError("unrecognized schema version " +
                          std::to_string(schema));
        ds.header.schema = schema;
        if (j.contains("source"))
          ds.header.source = j.at("source").get<std::string>();
        if (j.contains("complete"))
          ds.header.complete = j.at("complete").get<bool>();
        if (j.contains("branch")) {
          ds.header.branch = j.at("branch").get<std::string>();
          if (ds.header.branch != chars::kBranchConvention)
            throw DataError("branch tag '" + ds.header.branch +
                            "' does not match this build's convention");
        } else {
          ds.header.branch = chars::kBranchConvention;
          ds.warnings.push_back(origin +
                                ": header has no branch tag; assuming the "
                                "fixed principal branch");
        }
        if (j.contains("dims")) {
          for (auto& [key, v] : j.at("dims").items())
            ds.header.dims[key] = v.get<std::size_t>();
        }
      } catch (const std::exception& e) {
        fail(lineno, e.what());
      }
      continue;
    }
    try {
      spectra::EigenRecord rec = record_from_json(j, char_cache);
      validate_record(rec);
      std::string key = space_dim_key(rec.level, rec.weight, rec.char_label) +
                        ":" + std::to_string(rec.p) + ":" + rec.form_id;
      if (!seen_keys.insert(key).second)
        throw DataError("duplicate record key (" + key + ")");
      if (!rec.field_degree)
        ds.warnings.push_back(origin + ":" + std::to_string(lineno) +
                              ": record has no field_degree");
      ds.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      fail(lineno, e.what());
    }
  }

  if (!have_header) fail(lineno, "dataset has no header line");
  if (!errors.empty()) {
    std::string msg = "dataset validation failed (" +
                      std::to_string(errors.size()) + " error(s)):";
    for (const auto& e : errors) msg += "\n  " + e;
    throw DataError(msg);
  }
  return ds;
}

DatasetFile parse_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset_text(ss.str(), path.filename().string());
}

std::string serialize(const DatasetFile& ds) {
  json header{{"schema", ds.header.schema},
              {"source", ds.header.source},
              {"complete", ds.header.complete},
              {"branch", ds.header.branch}};
  if (!ds.header.dims.empty()) {
    json dims = json::object();
    for (const auto& [k, v] : ds.header.dims) dims[k] = v;
    header["dims"] = dims;
  }
  std::string out = header.dump() + "\n";
  for (const auto& rec : ds.records) out += record_to_json(rec).dump() + "\n";
  return out;
}

void write_dataset(const DatasetFile& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset " + path.string());
  out << serialize(ds);
}

std::vector<spectra::EigenMultiset> group_multisets(const DatasetFile& ds,
                                                    double im_tol,
                                                    double edge_tol) {
  std::vector<spectra::EigenMultiset> out;
  std::map<std::string, std::size_t> index;
  for (const auto& rec : ds.records) {
    std::string key = space_dim_key(rec.level, rec.weight, rec.char_label) +
                      ":" + std::to_string(rec.p);
    auto it = index.find(key);
    if (it == index.end()) {
      spectra::EigenMultiset ms;
      ms.level = rec.level;
      ms.weight = rec.weight;
      ms.char_label = rec.char_label;
      ms.p = rec.p;
      ms.complete = ds.header.complete;
      auto dim = ds.header.dims.find(
          space_dim_key(rec.level, rec.weight, rec.char_label));
      if (dim != ds.header.dims.end()) ms.dimension = dim->second;
      it = index.emplace(key, out.size()).first;
      out.push_back(std::move(ms));
    }
    out[it->second].values.push_back(
        spectra::normalize(rec, im_tol, edge_tol));
  }
  return out;
}

}  // namespace heckeq::ingest
