#include "casfric/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace casfric {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Accepted unit tokens per dimension. All map to scale factor 1: the library
// works in natural units and the token is a checked declaration.
const std::vector<std::string>& tokens_for(Dimension d) {
  static const std::vector<std::string> none = {};
  static const std::vector<std::string> length = {"nat", "l"};
  static const std::vector<std::string> time = {"nat", "t"};
  static const std::vector<std::string> freq = {"nat", "1/t", "rad/t"};
  static const std::vector<std::string> vel = {"nat", "l/t"};
  static const std::vector<std::string> energy = {"nat", "e"};
  static const std::vector<std::string> inv_energy = {"nat", "1/e"};
  static const std::vector<std::string> density = {"nat", "1/l3"};
  switch (d) {
    case Dimension::dimensionless: return none;
    case Dimension::length: return length;
    case Dimension::time: return time;
    case Dimension::frequency: return freq;
    case Dimension::velocity: return vel;
    case Dimension::energy: return energy;
    case Dimension::inverse_energy: return inv_energy;
    case Dimension::number_density: return density;
  }
  return none;
}

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::length: return "length";
    case Dimension::time: return "time";
    case Dimension::frequency: return "frequency";
    case Dimension::velocity: return "velocity";
    case Dimension::energy: return "energy";
    case Dimension::inverse_energy: return "inverse energy";
    case Dimension::number_density: return "number density";
  }
  return "?";
}

}  // namespace

Config Config::parse(std::istream& in) {
  Config cfg;
  std::ostringstream raw;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    raw << line << "\n";
    if (auto h = line.find_first_of("#;"); h != std::string::npos) {
      line = line.substr(0, h);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError("config: unterminated section header", line_no);
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ParseError("config: empty section name", line_no);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config: expected 'key = value'", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("config: empty key", line_no);
    }
    if (section.empty()) {
      throw ParseError("config: key outside any [section]", line_no);
    }
    cfg.sections_[section][key] = Entry{value, line_no};
  }
  cfg.raw_ = raw.str();
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("config: cannot open '" + path + "'", 0);
  }
  return parse(in);
}

const Config::Entry* Config::find(const std::string& section,
                                  const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  return &k->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

double Config::number(const std::string& section, const std::string& key,
                      Dimension dim) const {
  const Entry* e = find(section, key);
  if (!e) {
    throw ParseError("config: missing key [" + section + "] " + key, 0);
  }
  std::istringstream is(e->value);
  double v;
  if (!(is >> v)) {
    throw ParseError("config: [" + section + "] " + key + ": not a number",
                     e->line);
  }
  std::string unit, extra;
  is >> unit;
  if (is >> extra) {
    throw ParseError("config: [" + section + "] " + key + ": trailing '" +
                         extra + "'",
                     e->line);
  }
  const auto& allowed = tokens_for(dim);
  if (dim == Dimension::dimensionless) {
    if (!unit.empty() && unit != "-") {
      throw ParseError("config: [" + section + "] " + key +
                           ": dimensionless value must not carry a unit",
                       e->line);
    }
    return v;
  }
  if (unit.empty()) {
    throw ParseError("config: [" + section + "] " + key +
                         ": missing unit suffix (" +
                         std::string(dimension_name(dim)) + ")",
                     e->line);
  }
  if (std::find(allowed.begin(), allowed.end(), unit) == allowed.end()) {
    throw ParseError("config: [" + section + "] " + key + ": unit '" + unit +
                         "' is not a " + dimension_name(dim) + " unit",
                     e->line);
  }
  return v;
}

double Config::number_or(const std::string& section, const std::string& key,
                         Dimension dim, double fallback) const {
  return has(section, key) ? number(section, key, dim) : fallback;
}

long Config::integer(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) {
    throw ParseError("config: missing key [" + section + "] " + key, 0);
  }
  std::istringstream is(e->value);
  long v;
  std::string extra;
  if (!(is >> v) || (is >> extra)) {
    throw ParseError("config: [" + section + "] " + key + ": not an integer",
                     e->line);
  }
  return v;
}

long Config::integer_or(const std::string& section, const std::string& key,
                        long fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

std::string Config::text(const std::string& section,
                         const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) {
    throw ParseError("config: missing key [" + section + "] " + key, 0);
  }
  return e->value;
}

std::string Config::text_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

bool Config::flag_or(const std::string& section, const std::string& key,
                     bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ParseError("config: [" + section + "] " + key + ": not a boolean",
                   e->line);
}

std::uint64_t Config::hash() const { return fnv1a64(raw_); }

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

}  // namespace casfric
