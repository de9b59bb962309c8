#include "uasc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace uasc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace

KeyValues KeyValues::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str());
}

KeyValues KeyValues::from_string(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) +
                       " is not `key = value`");
    kv.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

bool KeyValues::has(const std::string& key) const { return kv_.count(key) > 0; }

void KeyValues::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw UsageError("empty config key");
  kv_[key] = value;
}

std::string KeyValues::get_string(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double KeyValues::get_real(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_real_token(it->second);
}

long KeyValues::get_int(const std::string& key, long fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_int_token(it->second);
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw UsageError("config key " + key + " is not a boolean: " + v);
}

std::vector<double> KeyValues::get_real_list(const std::string& key) const {
  std::vector<double> out;
  const auto it = kv_.find(key);
  if (it == kv_.end()) return out;
  for (const std::string& tok : split(it->second, ','))
    out.push_back(parse_real_token(tok));
  return out;
}

std::vector<long> KeyValues::get_int_list(const std::string& key) const {
  std::vector<long> out;
  const auto it = kv_.find(key);
  if (it == kv_.end()) return out;
  for (const std::string& tok : split(it->second, ','))
    out.push_back(parse_int_token(tok));
  return out;
}

double parse_real_token(const std::string& token) {
  const std::string t = trim(token);
  if (t.rfind("2^", 0) == 0) {
    char* end = nullptr;
    const long e = std::strtol(t.c_str() + 2, &end, 10);
    if (end == t.c_str() + 2 || *end != '\0')
      throw UsageError("bad dyadic token: " + t);
    return std::ldexp(1.0, static_cast<int>(e));
  }
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0')
    throw UsageError("bad numeric token: " + t);
  return v;
}

long parse_int_token(const std::string& token) {
  const double v = parse_real_token(token);
  const long r = std::lround(v);
  if (std::abs(v - r) > 1e-9)
    throw UsageError("expected an integer token: " + token);
  return r;
}

gpe::ResourceLimits resolve_limits(const KeyValues& kv) {
  gpe::ResourceLimits lim;
  lim.max_nx = static_cast<int>(kv.get_int("max_nx", lim.max_nx));
  lim.max_nt = kv.get_int("max_nt", lim.max_nt);
  if (const char* e = std::getenv("UASC_MAX_NX"))
    lim.max_nx = static_cast<int>(parse_int_token(e));
  if (const char* e = std::getenv("UASC_MAX_NT"))
    lim.max_nt = parse_int_token(e);
  return lim;
}

}  // namespace uasc
