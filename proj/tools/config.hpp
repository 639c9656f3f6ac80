#pragma once

#include <string>

namespace locuslab::cli {

// Defaults shared by the subcommands. A key=value file can replace any of
// them; command-line flags override both.
struct Config {
  int render_depth = 20;
  int render_res = 64;
  int render_tile = 32;
  int sample_depth = 14;
  int hull_kmax = 12;
  double search_radius = 0.05;
  double eps_fraction = 1.0 / 200.0;
  double grid_fraction = 1.0 / 512.0;
  double solve_tol = 1e-13;
  double margin_tol = 1e-12;
  int screen_limit = 18;
  unsigned threads = 0;
  std::string out_dir = ".";
};

// Lines are "key = value"; blank lines and lines starting with '#' are skipped.
// Throws UsageError on unknown keys or bad values.
Config load_config(const std::string& path);

// Throws UsageError when a tolerance is not positive or a depth is out of range.
void validate(const Config& config);

// Joins `file` onto out_dir unless it is absolute.
std::string output_path(const Config& config, const std::string& file);

struct UsageError {
  std::string message;
};

}  // namespace locuslab::cli
