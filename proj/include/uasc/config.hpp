#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uasc/gpe.hpp"

namespace uasc {

/// Flat key-value configuration: one `key = value` pair per line, `#` starts
/// a comment. Numeric tokens accept plain literals and dyadic powers of the
/// form 2^k / 2^-k.
class KeyValues {
 public:
  static KeyValues from_file(const std::string& path);
  static KeyValues from_string(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_real(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_real_list(const std::string& key) const;
  std::vector<long> get_int_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

double parse_real_token(const std::string& token);
long parse_int_token(const std::string& token);

/// Resource ceilings; environment variables UASC_MAX_NX and UASC_MAX_NT
/// override configured values.
gpe::ResourceLimits resolve_limits(const KeyValues& kv);

}  // namespace uasc
