// locus-lab: command line front end.
//
// Exit codes: 0 success, 1 domain errors (and certify finding nothing), 2 usage errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "locuslab/bseries.hpp"
#include "locuslab/core_ifs.hpp"
#include "locuslab/error.hpp"
#include "locuslab/hull.hpp"
#include "locuslab/render.hpp"
#include "locuslab/screen.hpp"
#include "locuslab/serialize.hpp"
#include "locuslab/traps.hpp"
#include "selftest.hpp"

namespace {

using namespace locuslab;
using cli::Config;
using cli::UsageError;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

std::vector<double> split_doubles(const std::string& text, std::size_t n, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError{std::string(what) + ": cannot parse '" + item + "'"};
    out.push_back(v);
  }
  if (out.size() != n) throw UsageError{std::string(what) + ": expected " + std::to_string(n) + " numbers"};
  return out;
}

// --config has to be known before the other flags get their defaults.
Config initial_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return cli::load_config(argv[i + 1]);
    if (a.rfind("--config=", 0) == 0) return cli::load_config(a.substr(9));
  }
  return {};
}

int run(int argc, char** argv) {
  Config cfg = initial_config(argc, argv);

  CLI::App app{"Connectedness locus of pairs of diagonal plane contractions"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file with defaults");
  app.add_option("--threads", cfg.threads, "worker threads (0: LOCUSLAB_THREADS or all cores)");
  app.add_option("--out-dir", cfg.out_dir, "directory for relative output paths");

  // render
  auto* render_cmd = app.add_subcommand("render", "escape-time image of the locus (PGM)");
  std::string window = "0.5,1,0.5,1";
  std::string palette = "binary";
  std::string render_out = "locus.pgm";
  render_cmd->add_option("--window", window, "gamma0,gamma1,lambda0,lambda1")->capture_default_str();
  render_cmd->add_option("--res", cfg.render_res, "pixels per side")->capture_default_str();
  render_cmd->add_option("--depth", cfg.render_depth, "residue search depth")->capture_default_str();
  render_cmd->add_option("--tile", cfg.render_tile, "tile edge in pixels")->capture_default_str();
  render_cmd->add_option("--palette", palette, "binary or depth")
      ->check(CLI::IsMember({"binary", "depth"}))
      ->capture_default_str();
  render_cmd->add_option("--out", render_out, "output PGM")->capture_default_str();

  // attractor
  auto* attractor_cmd = app.add_subcommand("attractor", "attractor sample points (JSON)");
  std::string params_text;
  std::string attractor_out = "attractor.json";
  attractor_cmd->add_option("--params", params_text, "gamma,lambda")->required();
  attractor_cmd->add_option("--depth", cfg.sample_depth, "word length")->capture_default_str();
  attractor_cmd->add_option("--out", attractor_out, "output JSON")->capture_default_str();

  // hull
  auto* hull_cmd = app.add_subcommand("hull", "convex hull vertices (JSON)");
  std::string hull_out = "hull.json";
  bool numeric = false;
  hull_cmd->add_option("--params", params_text, "gamma,lambda")->required();
  hull_cmd->add_option("--kmax", cfg.hull_kmax, "vertex families A_k..D_k up to k")->capture_default_str();
  hull_cmd->add_flag("--numeric", numeric, "hull of an attractor sample instead of the closed form");
  hull_cmd->add_option("--depth", cfg.sample_depth, "sample depth for --numeric")->capture_default_str();
  hull_cmd->add_option("--out", hull_out, "output JSON")->capture_default_str();

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "trap certificates for interior points (JSON)");
  std::string series_text;
  std::string certify_out = "certificates.json";
  certify_cmd->add_option("--params", params_text, "gamma,lambda: common zeros of the series")->required();
  certify_cmd->add_option("--series", series_text, "series in B, e.g. +0-+-(+)")->required();
  certify_cmd->add_option("--radius", cfg.search_radius, "search radius around params")->capture_default_str();
  certify_cmd->add_option("--eps-fraction", cfg.eps_fraction, "disk radius / attractor diameter")
      ->capture_default_str();
  certify_cmd->add_option("--grid-fraction", cfg.grid_fraction, "raster cell / attractor diameter")
      ->capture_default_str();
  certify_cmd->add_option("--margin-tol", cfg.margin_tol, "minimum accepted margin")->capture_default_str();
  certify_cmd->add_option("--out", certify_out, "output JSON")->capture_default_str();

  // screen
  auto* screen_cmd = app.add_subcommand("screen", "outlier candidate screening (JSON)");
  int mmax = 10;
  std::string tail_text = "plus";
  std::string screen_out = "candidates.json";
  screen_cmd->add_option("--mmax", mmax, "largest finite-part degree")->capture_default_str();
  screen_cmd->add_option("--tail", tail_text, "zero, plus, minus, alt_plus_even, alt_minus_even")
      ->capture_default_str();
  screen_cmd->add_option("--limit", cfg.screen_limit, "refuse mmax above this")->capture_default_str();
  screen_cmd->add_option("--out", screen_out, "output JSON")->capture_default_str();

  auto* selftest_cmd = app.add_subcommand("selftest", "quick property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  cli::validate(cfg);

  if (render_cmd->parsed()) {
    const auto w = split_doubles(window, 4, "--window");
    RenderJob job;
    job.x0 = w[0];
    job.x1 = w[1];
    job.y0 = w[2];
    job.y1 = w[3];
    job.resolution = cfg.render_res;
    job.max_depth = cfg.render_depth;
    job.tile = std::min(cfg.render_tile, cfg.render_res);
    job.threads = cfg.threads;
    if (job.resolution % job.tile != 0) throw UsageError{"--tile must divide --res"};
    const auto result = render(job, palette == "binary" ? Palette::kBinary : Palette::kEscapeDepth);
    const std::string path = cli::output_path(cfg, render_out);
    write_pgm(path, result.image);
    for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";
    std::printf("render %dx%d depth %d: survived %llu trivial %llu escaped %llu clipped %llu -> %s\n",
                job.resolution, job.resolution, job.max_depth, static_cast<unsigned long long>(result.survived),
                static_cast<unsigned long long>(result.trivial), static_cast<unsigned long long>(result.escaped),
                static_cast<unsigned long long>(result.clipped), path.c_str());
    return 0;
  }

  if (attractor_cmd->parsed()) {
    const Params p = Params::parse(params_text);
    const auto sample = attractor_sample(p, cfg.sample_depth);
    const std::string path = cli::output_path(cfg, attractor_out);
    write_text(path, attractor_json(p, sample));
    std::printf("attractor %s depth %d: %zu points, hausdorff bound %.3g -> %s\n", p.to_string().c_str(),
                sample.depth, sample.points.size(), sample.hausdorff_bound, path.c_str());
    return 0;
  }

  if (hull_cmd->parsed()) {
    const Params p = Params::parse(params_text);
    const std::string path = cli::output_path(cfg, hull_out);
    std::size_t count = 0;
    if (numeric) {
      const auto sample = attractor_sample(p, cfg.sample_depth);
      const auto poly = numeric_hull(sample.points);
      count = poly.size();
      write_text(path, hull_json(p, poly));
    } else {
      const auto hull = analytic_vertices(p, cfg.hull_kmax);
      count = hull.vertices.size();
      write_text(path, hull_json(p, hull));
    }
    std::printf("hull %s (%s): %zu vertices -> %s\n", p.to_string().c_str(), numeric ? "numeric" : "analytic",
                count, path.c_str());
    return 0;
  }

  if (certify_cmd->parsed()) {
    const Params p = Params::parse(params_text);
    const BSeries f = BSeries::parse(series_text);
    CertifyOptions opt;
    opt.eps_fraction = cfg.eps_fraction;
    opt.grid_fraction = cfg.grid_fraction;
    opt.solve_tol = cfg.solve_tol;
    opt.margin_tol = cfg.margin_tol;
    opt.threads = cfg.threads;
    const auto result = certify_interior(p, f, cfg.search_radius, opt);
    const std::string path = cli::output_path(cfg, certify_out);
    write_text(path, certify_json(p, result));
    if (result.certificates.empty()) {
      std::printf("certify %s: no certificate (%s) -> %s\n", p.to_string().c_str(),
                  result.trace.empty() ? "no trace" : result.trace.back().c_str(), path.c_str());
      return kExitDomain;
    }
    std::printf("certify %s: %zu certificates at order %d -> %s\n", p.to_string().c_str(),
                result.certificates.size(), result.certificates.front().order_m, path.c_str());
    return 0;
  }

  if (screen_cmd->parsed()) {
    const Tail tail = parse_tail(tail_text);
    ScreenOptions opt;
    opt.limit = cfg.screen_limit;
    opt.threads = cfg.threads;
    const auto candidates = enumerate_candidates(mmax, tail, opt);
    std::vector<ConstraintVerdict> verdicts;
    std::size_t kept = 0;
    for (const auto& c : candidates) {
      verdicts.push_back(apply_constraints(c));
      kept += verdicts.back().kept ? 1 : 0;
    }
    const std::string path = cli::output_path(cfg, screen_out);
    write_text(path, screen_json(mmax, tail, candidates, verdicts));
    std::printf("screen mmax %d tail %s: %llu finite parts, %zu candidates, %zu kept%s -> %s\n", mmax,
                std::string(to_string(tail)).c_str(),
                static_cast<unsigned long long>(enumeration_size(mmax, tail)), candidates.size(), kept,
                kept > 0 ? " (RESEARCH EVENT: candidate survives all filters)" : "", path.c_str());
    return 0;
  }

  if (selftest_cmd->parsed()) {
    const bool ok = cli::run_selftest(std::cout);
    std::printf("selftest: %s\n", ok ? "all checks passed" : "FAILED");
    return ok ? 0 : kExitDomain;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::kParse ? kExitUsage : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
