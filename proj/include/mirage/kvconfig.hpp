#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

namespace mirage {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plain `key = value` configuration files: one pair per line, '#'
// comments, dotted keys for nesting (channel.p0 = 0.82). Flags given on
// the command line override file values.
class KvConfig {
 public:
  KvConfig() = default;
  static KvConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  uint64_t get_u64(const std::string& key, uint64_t fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace mirage
