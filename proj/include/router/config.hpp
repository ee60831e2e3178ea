#pragma once
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace router {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value store with '#' comments; sections are dotted key prefixes.
// Values keep their literal text; typed access parses on demand.
struct Config {
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }

  std::string get_str(const std::string& key) const;            // required
  std::string get_str(const std::string& key, const std::string& fallback) const;
  double get_num(const std::string& key) const;                 // required
  double get_num(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_flag(const std::string& key, bool fallback) const;   // 0/1/true/false
  // comma-separated list of numbers
  std::vector<double> get_list(const std::string& key) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  void set(const std::string& key, const std::string& value) { kv[key] = value; }
  void set_num(const std::string& key, double value);
};

Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

// canonical echo: keys sorted, one per line; parsing it back round-trips
std::string render_config(const Config& c);

}
