#ifndef HECKEQ_CONFIG_HPP
#define HECKEQ_CONFIG_HPP

#include <filesystem>
#include <map>
#include <string>

namespace heckeq::ingest {

// Flat key/value configuration. File syntax (documented in the README):
//   # comment
//   key = value
//   [section]          -> later keys become "section.key"
// Values may be double-quoted to preserve surrounding whitespace.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  void set(const std::string& key, const std::string& value) {
    kv_[key] = value;
  }

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace heckeq::ingest

#endif
