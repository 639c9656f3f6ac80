#include "config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "locuslab/core_ifs.hpp"

namespace locuslab::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
void parse_number(const std::string& key, const std::string& text, T& out) {
  T v{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError{"config key '" + key + "': cannot parse '" + text + "'"};
  }
  out = v;
}

}  // namespace

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot read config file '" + path + "'"};
  Config c;
  const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters{
      {"render_depth", [&](auto& k, auto& v) { parse_number(k, v, c.render_depth); }},
      {"render_res", [&](auto& k, auto& v) { parse_number(k, v, c.render_res); }},
      {"render_tile", [&](auto& k, auto& v) { parse_number(k, v, c.render_tile); }},
      {"sample_depth", [&](auto& k, auto& v) { parse_number(k, v, c.sample_depth); }},
      {"hull_kmax", [&](auto& k, auto& v) { parse_number(k, v, c.hull_kmax); }},
      {"search_radius", [&](auto& k, auto& v) { parse_number(k, v, c.search_radius); }},
      {"eps_fraction", [&](auto& k, auto& v) { parse_number(k, v, c.eps_fraction); }},
      {"grid_fraction", [&](auto& k, auto& v) { parse_number(k, v, c.grid_fraction); }},
      {"solve_tol", [&](auto& k, auto& v) { parse_number(k, v, c.solve_tol); }},
      {"margin_tol", [&](auto& k, auto& v) { parse_number(k, v, c.margin_tol); }},
      {"screen_limit", [&](auto& k, auto& v) { parse_number(k, v, c.screen_limit); }},
      {"threads", [&](auto& k, auto& v) { parse_number(k, v, c.threads); }},
      {"out_dir", [&](auto&, auto& v) { c.out_dir = v; }},
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError{path + ":" + std::to_string(lineno) + ": expected key = value"};
    }
    const std::string key = trim(line.substr(0, eq));
    const auto it = setters.find(key);
    if (it == setters.end()) throw UsageError{path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'"};
    it->second(key, trim(line.substr(eq + 1)));
  }
  return c;
}

void validate(const Config& c) {
  auto positive = [](const char* name, double v) {
    if (!(v > 0)) throw UsageError{std::string(name) + " must be positive"};
  };
  positive("search_radius", c.search_radius);
  positive("eps_fraction", c.eps_fraction);
  positive("grid_fraction", c.grid_fraction);
  positive("solve_tol", c.solve_tol);
  positive("margin_tol", c.margin_tol);
  auto in_range = [](const char* name, int v, int lo, int hi) {
    if (v < lo || v > hi) {
      throw UsageError{std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"};
    }
  };
  in_range("render_depth", c.render_depth, 0, 200);
  in_range("render_res", c.render_res, 1, 16384);
  in_range("render_tile", c.render_tile, 1, 16384);
  in_range("sample_depth", c.sample_depth, 0, kDefaultMaxSampleDepth);
  in_range("hull_kmax", c.hull_kmax, 0, 60);
  in_range("screen_limit", c.screen_limit, 0, 24);
}

std::string output_path(const Config& c, const std::string& file) {
  const std::filesystem::path p(file);
  if (p.is_absolute() || c.out_dir.empty() || c.out_dir == ".") return file;
  std::filesystem::create_directories(c.out_dir);
  return (std::filesystem::path(c.out_dir) / p).string();
}

}  // namespace locuslab::cli
