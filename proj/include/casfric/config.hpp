#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "casfric/errors.hpp"

namespace casfric {

/// Dimensions recognized by the config layer. Values are stored in natural
/// units (hbar = k_B = 1); the mandatory unit suffix on every physical input
/// is a dimension declaration that the parser checks against the key's
/// expected dimension, so a value pasted under the wrong key fails loudly
/// instead of silently rescaling.
enum class Dimension {
  dimensionless,
  length,
  time,
  frequency,
  velocity,
  energy,
  inverse_energy,
  number_density,
};

/// Flat key-value config with [section] headers, '#' or ';' comments and
/// one `key = value [unit]` pair per line.
class Config {
 public:
  static Config parse(std::istream& in);
  static Config parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;

  /// Numeric value with its unit suffix checked against `dim`.
  double number(const std::string& section, const std::string& key,
                Dimension dim) const;
  double number_or(const std::string& section, const std::string& key,
                   Dimension dim, double fallback) const;

  long integer(const std::string& section, const std::string& key) const;
  long integer_or(const std::string& section, const std::string& key,
                  long fallback) const;

  std::string text(const std::string& section, const std::string& key) const;
  std::string text_or(const std::string& section, const std::string& key,
                      const std::string& fallback) const;

  bool flag_or(const std::string& section, const std::string& key,
               bool fallback) const;

  /// Raw bytes of the parsed file; feeds the output hash.
  const std::string& raw_text() const { return raw_; }
  std::uint64_t hash() const;

 private:
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::string raw_;

  const Entry* find(const std::string& section, const std::string& key) const;
};

/// FNV-1a, used for the config hash carried in every CSV header.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// Fixed CSV float formatting ("%.12e"); byte-identical output for identical
/// doubles regardless of thread count.
std::string csv_double(double v);

}  // namespace casfric
