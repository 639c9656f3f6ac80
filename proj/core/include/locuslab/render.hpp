#pragma once

// Escape-time membership for the connectedness locus and image rendering.
//
// (gamma, lambda) is in the locus iff some f in B vanishes at both. With
// residues r_n = f_n(x) / x^n, r_0 = 1 and r_{n+1} = r_n / x + a_{n+1}; the
// tail bound |f - f_n| <= |x|^{n+1} / (1 - |x|) shows a branch with
// |r_n| > |x| / (1 - |x|) in either coordinate cannot extend to a common zero.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "locuslab/core_ifs.hpp"

namespace locuslab {

enum class EscapeStatus { kSurvived, kEscaped };

struct EscapeResult {
  EscapeStatus status = EscapeStatus::kEscaped;
  // Survived: max_depth. Escaped: one more than the deepest level reached
  // by an unpruned branch (0 when the root is pruned).
  int depth = 0;
  // Largest number of residue nodes visited on a single level.
  std::uint64_t branch_count_peak = 0;
  std::uint64_t nodes = 0;
  bool survived() const noexcept { return status == EscapeStatus::kSurvived; }
};

// dedup_q < 0 selects (1 - L) 1e-4; dedup_q == 0 disables the memo of dead
// residues. The memo merges residues within one cell, which can only turn a
// survival into an escape.
EscapeResult membership(const Params& params, int max_depth, double dedup_q = -1.0);

// Same search with a single complex residue (the locus of roots of B).
EscapeResult membership_M(std::complex<double> z, int max_depth, double dedup_q = -1.0);

enum class Palette { kBinary, kEscapeDepth };

struct RenderJob {
  double x0 = 0.5, x1 = 1.0;  // gamma range
  double y0 = 0.5, y1 = 1.0;  // lambda range
  int resolution = 64;
  int max_depth = 20;
  int tile = 32;
  double dedup_q = -1.0;
  unsigned threads = 0;
};

inline constexpr std::uint8_t kBlack = 0;
inline constexpr std::uint8_t kGray = 128;
inline constexpr std::uint8_t kWhite = 255;

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at the top (largest lambda)
  std::uint8_t at(int i, int j) const { return pixels[static_cast<std::size_t>(j) * width + i]; }
};

struct RenderResult {
  Image image;
  std::uint64_t survived = 0;
  std::uint64_t trivial = 0;
  std::uint64_t escaped = 0;
  std::uint64_t clipped = 0;
  std::vector<std::string> warnings;
};

// (gamma, lambda) at the center of pixel (i, j).
PlanePoint pixel_center(const RenderJob& job, int i, int j);

// Binary palette: gray where |gamma lambda| >= 1/2, else black when the
// search survives and white when it escapes. Depth palette: black for
// survival, otherwise brighter for earlier escape. Pixels outside the open
// unit square are clipped to white with a warning.
RenderResult render(const RenderJob& job, Palette palette);

void write_pgm(const std::string& path, const Image& image);
Image read_pgm(const std::string& path);

}  // namespace locuslab
