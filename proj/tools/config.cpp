#include "config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dsft::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(out))
    throw ConfigError(key + ": expected a finite number, got '" + v + "'");
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  const double d = to_real(key, v);
  if (d < 0 || d != std::floor(d) || d > 1e9)
    throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
  return static_cast<std::size_t>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_real(key, trim(item)));
  return out;
}

std::string one_of(const std::string& key, const std::string& v, const std::set<std::string>& allowed) {
  if (!allowed.count(v)) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError(key + ": unknown value '" + v + "' (expected one of: " + list + ")");
  }
  return v;
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  namespace fs = std::filesystem;
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& base_dir) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (kv.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + key);
    kv[key] = trim(line.substr(eq + 1));
  }

  RunConfig c;
  std::set<std::string> seen;
  auto take = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    seen.insert(key);
    return &it->second;
  };
  auto need = [&](const std::string& key) -> const std::string& {
    if (const auto* v = take(key)) return *v;
    throw ConfigError("missing required key " + key);
  };

  c.potential_kind = one_of("potential.kind", need("potential.kind"),
                            {"zero", "sech2", "square_well", "gaussian_well", "sampled"});
  if (const auto* v = take("potential.params")) c.potential_params = to_list("potential.params", *v);
  if (const auto* v = take("potential.file")) c.potential_file = resolve(base_dir, *v);
  if ((c.potential_kind == "sampled") != !c.potential_file.empty())
    throw ConfigError("potential.file goes with potential.kind = sampled, and only with it");

  c.x_min = to_real("grid.x_min", need("grid.x_min"));
  c.x_max = to_real("grid.x_max", need("grid.x_max"));
  c.n = to_count("grid.n", need("grid.n"));
  if (!(c.x_min < c.x_max)) throw ConfigError("grid.x_min must be below grid.x_max");
  if (c.n < 3) throw ConfigError("grid.n must be at least 3");

  if (const auto* v = take("xi.max")) c.xi_max = to_real("xi.max", *v);
  if (const auto* v = take("xi.n")) c.n_xi = to_count("xi.n", *v);
  if (c.xi_max <= 0) throw ConfigError("xi.max must be positive");
  if (c.n_xi < 2 || c.n_xi % 2 != 0) throw ConfigError("xi.n must be even and at least 2");

  if (const auto* v = take("oracle.pad")) {
    c.has_oracle_pad = true;
    c.oracle_pad = to_count("oracle.pad", *v);
  }

  if (const auto* v = take("multiplier.kind")) {
    c.multiplier.present = true;
    c.multiplier.kind = one_of("multiplier.kind", *v, {"tent", "smooth_bump"});
    c.multiplier.center = to_real("multiplier.center", need("multiplier.center"));
    c.multiplier.radius = to_real("multiplier.radius", need("multiplier.radius"));
  }

  if (const auto* v = take("function.kind"))
    c.function.kind = one_of("function.kind", *v, {"gaussian", "bump", "sampled"});
  if (const auto* v = take("function.center")) c.function.center = to_real("function.center", *v);
  if (const auto* v = take("function.width")) c.function.width = to_real("function.width", *v);
  if (const auto* v = take("function.file")) c.function.file = resolve(base_dir, *v);
  if ((c.function.kind == "sampled") != !c.function.file.empty())
    throw ConfigError("function.file goes with function.kind = sampled, and only with it");
  if (c.function.kind != "sampled" && !(c.function.width > 0))
    throw ConfigError("function.width must be positive");

  const std::pair<const char*, double*> tols[] = {
      {"tolerance.plancherel", &c.tol.plancherel},
      {"tolerance.roundtrip", &c.tol.roundtrip},
      {"tolerance.intertwining", &c.tol.intertwining},
      {"tolerance.kernel_vs_oracle", &c.tol.kernel_vs_oracle},
      {"tolerance.route", &c.tol.route},
      {"tolerance.unitarity", &c.tol.unitarity},
  };
  for (auto [key, dst] : tols)
    if (const auto* v = take(key)) {
      *dst = to_real(key, *v);
      if (!(*dst > 0)) throw ConfigError(std::string(key) + " must be positive");
    }

  for (const auto& [key, value] : kv)
    if (!seen.count(key)) throw ConfigError("unknown key " + key);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_config(in, dir.empty() ? "." : dir);
}

}  // namespace dsft::cli
