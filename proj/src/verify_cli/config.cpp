#include "virasoro/verify.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>

namespace vir {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_integer(const std::string& key, const std::string& v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: '" + key + "' expects true or false, got '" + v + "'");
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  std::map<std::string, long*> counts{{"restriction_samples", &restriction_samples},
                                      {"martingale_samples", &martingale_samples},
                                      {"scaling_samples", &scaling_samples},
                                      {"agreement_samples", &agreement_samples},
                                      {"one_shot_samples", &one_shot_samples},
                                      {"disintegration_samples", &disintegration_samples},
                                      {"tube_pairs", &tube_pairs},
                                      {"multi_trace_sets", &multi_trace_sets}};
  std::map<std::string, int*> orders{{"spectators", &spectators}, {"jet_order", &jet_order}, {"hydro_depth", &hydro_depth}};
  if (key == "suite") {
    if (v != "symbolic" && v != "numeric" && v != "mc" && v != "all") throw ConfigError("config: unknown suite '" + v + "'");
    suite = v;
  } else if (key == "seed") {
    seed = parse_integer<std::uint64_t>(key, v);
  } else if (key == "tol_scale") {
    tol_scale = parse_real(key, v);
    if (!(tol_scale > 0)) throw ConfigError("config: tol_scale must be positive");
  } else if (key == "out") {
    out = v;
  } else if (key == "parallel") {
    parallel = parse_bool(key, v);
  } else if (auto it = counts.find(key); it != counts.end()) {
    *it->second = parse_integer<long>(key, v);
    if (*it->second < 2) throw ConfigError("config: '" + key + "' must be at least 2");
  } else if (auto jt = orders.find(key); jt != orders.end()) {
    *jt->second = parse_integer<int>(key, v);
    if (*jt->second < 0) throw ConfigError("config: '" + key + "' must be non-negative");
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse(in);
}

nlohmann::json RunConfig::to_json() const {
  return {{"suite", suite},
          {"seed", seed},
          {"tol_scale", tol_scale},
          {"out", out},
          {"spectators", spectators},
          {"jet_order", jet_order},
          {"hydro_depth", hydro_depth},
          {"restriction_samples", restriction_samples},
          {"martingale_samples", martingale_samples},
          {"scaling_samples", scaling_samples},
          {"agreement_samples", agreement_samples},
          {"one_shot_samples", one_shot_samples},
          {"disintegration_samples", disintegration_samples},
          {"tube_pairs", tube_pairs},
          {"multi_trace_sets", multi_trace_sets},
          {"parallel", parallel}};
}

}  // namespace vir
