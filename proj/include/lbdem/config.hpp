#pragma once

// Flat key/value configuration. Lines have the form
//
//   section.key = value        # trailing comments allowed
//
// Keys are dotted paths; values are parsed on demand as string, number or
// boolean. Lookups mark keys as consumed so callers can reject unknown
// keys after building their parameters. The digest is order independent
// (keys are sorted before hashing) and covers exactly the key/value
// pairs, so it identifies a configuration regardless of formatting.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lbdem/core.hpp"

namespace lbdem {

class Config {
 public:
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>") {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      const std::size_t eq = trimmed.find('=');
      if (eq == std::string::npos) {
        fail(ErrorCategory::config,
             origin + ":" + std::to_string(lineno) +
                 ": expected 'key = value'");
      }
      const std::string key = trim(trimmed.substr(0, eq));
      const std::string value = trim(trimmed.substr(eq + 1));
      if (key.empty()) {
        fail(ErrorCategory::config,
             origin + ":" + std::to_string(lineno) + ": empty key");
      }
      cfg.entries_[key] = value;
    }
    return cfg;
  }

  static Config parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorCategory::config, "cannot read config file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_string(buf.str(), path);
  }

  void set(const std::string& key, const std::string& value) {
    entries_[key] = value;
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& def) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    consumed_.insert(consumed_.end(), key);
    return it->second;
  }

  real get_real(const std::string& key, real def) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    consumed_.push_back(key);
    const std::string& s = it->second;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *skip_ws(end) != '\0') {
      fail(ErrorCategory::config, "key '" + key + "': not a number: " + s);
    }
    return v;
  }

  int get_int(const std::string& key, int def) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    consumed_.push_back(key);
    const std::string& s = it->second;
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *skip_ws(end) != '\0') {
      fail(ErrorCategory::config, "key '" + key + "': not an integer: " + s);
    }
    return static_cast<int>(v);
  }

  std::uint64_t get_uint64(const std::string& key, std::uint64_t def) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    consumed_.push_back(key);
    const std::string& s = it->second;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end == s.c_str() || *skip_ws(end) != '\0') {
      fail(ErrorCategory::config, "key '" + key + "': not an integer: " + s);
    }
    return v;
  }

  bool get_bool(const std::string& key, bool def) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return def;
    consumed_.push_back(key);
    const std::string& s = it->second;
    if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "off" || s == "no") return false;
    fail(ErrorCategory::config, "key '" + key + "': not a boolean: " + s);
  }

  // Keys present in the config that no getter has touched.
  std::vector<std::string> unconsumed() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) {
      if (std::find(consumed_.begin(), consumed_.end(), k) ==
          consumed_.end()) {
        out.push_back(k);
      }
    }
    return out;
  }

  void reject_unconsumed() const {
    const std::vector<std::string> left = unconsumed();
    if (left.empty()) return;
    std::string msg = "unknown config keys:";
    for (const std::string& k : left) msg += " " + k;
    fail(ErrorCategory::config, msg);
  }

  // Order-independent fingerprint of the key/value pairs. std::map keeps
  // keys sorted, so iteration order is canonical.
  std::uint64_t digest() const {
    std::uint64_t h = fnv1a(nullptr, 0);
    for (const auto& [k, v] : entries_) {
      h = fnv1a(k.data(), k.size(), h);
      h = fnv1a("=", 1, h);
      h = fnv1a(v.data(), v.size(), h);
      h = fnv1a("\n", 1, h);
    }
    return h;
  }

  std::string digest_hex() const {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(digest()));
    return std::string(buf);
  }

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
  }

  static const char* skip_ws(const char* p) {
    while (*p && std::isspace(static_cast<unsigned char>(*p))) ++p;
    return p;
  }

  std::map<std::string, std::string> entries_;
  std::vector<std::string> consumed_;
};

}  // namespace lbdem
