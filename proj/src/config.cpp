#include "router/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace router {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_num(const std::string& key, const std::string& text) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size())
      throw ConfigError("config: trailing characters in value of " + key + ": " + text);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse number for " + key + ": " + text);
  }
}

} // namespace

std::string Config::get_str(const std::string& key) const {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("config: missing required key " + key);
  return it->second;
}

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

double Config::get_num(const std::string& key) const { return parse_num(key, get_str(key)); }

double Config::get_num(const std::string& key, double fallback) const {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_num(key, it->second);
}

long Config::get_int(const std::string& key, long fallback) const {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const double v = parse_num(key, it->second);
  const long n = std::lround(v);
  if (v != static_cast<double>(n))
    throw ConfigError("config: " + key + " must be an integer, got " + it->second);
  return n;
}

bool Config::get_flag(const std::string& key, bool fallback) const {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string v = it->second;
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("config: " + key + " must be a boolean, got " + v);
}

std::vector<double> Config::get_list(const std::string& key) const {
  const std::string text = get_str(key);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError("config: empty list element in " + key);
    out.push_back(parse_num(key, item));
  }
  if (out.empty()) throw ConfigError("config: empty list for " + key);
  return out;
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
  return has(key) ? get_list(key) : fallback;
}

void Config::set_num(const std::string& key, double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << value;
  kv[key] = os.str();
}

Config parse_config_text(const std::string& text) {
  Config c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: empty key on line " + std::to_string(lineno));
    c.kv[key] = val;
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string render_config(const Config& c) {
  std::string out;
  for (const auto& [k, v] : c.kv) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

}
