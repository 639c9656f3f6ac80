#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>

#include "error_code.hpp"
#include "generators.hpp"
#include "locuslab/render.hpp"
#include "oracles.hpp"

using namespace locuslab;

TEST_SUITE("render") {

TEST_CASE("membership examples") {
  const auto small = membership(Params(0.3, 0.4), 20);
  CHECK_FALSE(small.survived());
  CHECK(small.depth == 0);

  const auto trivial = membership(Params(0.75, 0.7), 20);
  CHECK(trivial.survived());
  CHECK(trivial.depth == 20);

  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(membership(Params(golden, golden), 25).survived());
  CHECK(membership(Params(-golden, -golden), 25).survived());

  CHECK(error_code([] { membership(Params(0.0, 0.7), 5); }) == ErrorCode::kDomain);
  CHECK(error_code([] { membership(Params(0.6, 0.7), -1); }) == ErrorCode::kPrecondition);
}

TEST_CASE("membership_M examples") {
  CHECK(membership_M({0.3, 0.1}, 20).depth == 0);
  CHECK(membership_M({0.0, 0.8}, 20).survived());
  CHECK(membership_M({0.62, 0.0}, 20).survived());
  CHECK(error_code([] { membership_M({0.0, 0.0}, 5); }) == ErrorCode::kDomain);
  CHECK(error_code([] { membership_M({1.0, 0.0}, 5); }) == ErrorCode::kDomain);
}

TEST_CASE("escape depth agrees with exhaustive prefix search") {
  gen::Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const double g = rng.uniform(0.5, 0.8) * (rng.coin() ? 1 : -1);
    const double l = rng.uniform(0.5, 0.8) * (rng.coin() ? 1 : -1);
    const int depth = 9;
    const auto r = membership(Params(g, l), depth, 0.0);
    CAPTURE(g);
    CAPTURE(l);
    if (r.survived()) {
      CHECK(oracle::some_prefix_survives(g, l, depth));
    } else {
      CHECK_FALSE(oracle::some_prefix_survives(g, l, r.depth));
      if (r.depth >= 1) CHECK(oracle::some_prefix_survives(g, l, r.depth - 1));
    }
  }
}

TEST_CASE("dedup only turns survival into escape") {
  gen::Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const Params p(rng.uniform(0.5, 0.75), rng.uniform(0.5, 0.75));
    const auto exact = membership(p, 14, 0.0);
    const auto merged = membership(p, 14);
    if (merged.survived()) CHECK(exact.survived());
  }
}

TEST_CASE("survival is monotone in depth") {
  gen::Rng rng(13);
  for (int t = 0; t < 30; ++t) {
    const Params p(rng.uniform(0.5, 0.75), rng.uniform(0.5, 0.75));
    const auto deep = membership(p, 16, 0.0);
    for (int d = 0; d <= 16; ++d) {
      const auto shallow = membership(p, d, 0.0);
      if (deep.survived()) CHECK(shallow.survived());
      if (!shallow.survived()) CHECK(shallow.depth == deep.depth);
    }
  }
}

TEST_CASE("membership symmetries") {
  gen::Rng rng(14);
  for (int t = 0; t < 40; ++t) {
    const double g = rng.uniform(0.5, 0.75), l = rng.uniform(-0.75, 0.75);
    if (l == 0.0) continue;
    const auto a = membership(Params(g, l), 14, 0.0);
    const auto b = membership(Params(l, g), 14, 0.0);
    const auto c = membership(Params(-g, -l), 14, 0.0);
    CHECK(a.survived() == b.survived());
    CHECK(a.depth == b.depth);
    CHECK(a.survived() == c.survived());
    CHECK(a.depth == c.depth);
  }
}

TEST_CASE("render colours") {
  RenderJob job;
  job.resolution = 32;
  job.tile = 16;
  job.max_depth = 12;
  const auto r = render(job, Palette::kBinary);
  REQUIRE(r.image.width == 32);
  REQUIRE(r.image.pixels.size() == 32u * 32u);
  CHECK(r.survived + r.trivial + r.escaped + r.clipped == 32u * 32u);
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 32; ++i) {
      const auto c = pixel_center(job, i, j);
      const auto px = r.image.at(i, j);
      if (std::abs(c.x * c.y) >= 0.5) {
        CHECK(px == kGray);
      } else {
        CHECK(px == (membership(Params(c.x, c.y), 12).survived() ? kBlack : kWhite));
      }
    }
  }
  // Row 0 is the top of the window.
  CHECK(pixel_center(job, 0, 0).y > pixel_center(job, 0, 31).y);
  CHECK(pixel_center(job, 0, 0).x < pixel_center(job, 31, 0).x);
}

TEST_CASE("small parameters render white") {
  RenderJob job;
  job.x0 = job.y0 = -0.45;
  job.x1 = job.y1 = 0.45;
  job.resolution = 16;
  job.tile = 8;
  const auto r = render(job, Palette::kBinary);
  for (auto px : r.image.pixels) CHECK(px == kWhite);
  CHECK(r.escaped == 256u);
}

TEST_CASE("depth palette") {
  RenderJob job;
  job.resolution = 16;
  job.tile = 16;
  job.max_depth = 10;
  const auto r = render(job, Palette::kEscapeDepth);
  for (int j = 0; j < 16; ++j) {
    for (int i = 0; i < 16; ++i) {
      const auto c = pixel_center(job, i, j);
      if (membership(Params(c.x, c.y), 10).survived()) CHECK(r.image.at(i, j) == kBlack);
      else CHECK(r.image.at(i, j) > kBlack);
    }
  }
}

TEST_CASE("clipping outside the unit square") {
  RenderJob job;
  job.x0 = 0.9;
  job.x1 = 1.1;
  job.resolution = 8;
  job.tile = 8;
  const auto r = render(job, Palette::kBinary);
  CHECK(r.clipped > 0);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("dedup changes few pixels") {
  RenderJob job;
  job.resolution = 64;
  job.tile = 32;
  job.max_depth = 16;
  const auto merged = render(job, Palette::kBinary);
  job.dedup_q = 0.0;
  const auto exact = render(job, Palette::kBinary);
  int differ = 0;
  for (std::size_t k = 0; k < exact.image.pixels.size(); ++k) {
    if (exact.image.pixels[k] != merged.image.pixels[k]) {
      ++differ;
      // Merging may only lose survivors.
      CHECK(exact.image.pixels[k] == kBlack);
    }
  }
  CHECK(differ <= 64 * 64 / 100);
}

TEST_CASE("render rejects bad jobs") {
  RenderJob job;
  job.resolution = 30;
  job.tile = 16;
  CHECK(error_code([&] { render(job, Palette::kBinary); }) == ErrorCode::kPrecondition);
  job.tile = 10;
  job.x1 = job.x0;
  CHECK(error_code([&] { render(job, Palette::kBinary); }) == ErrorCode::kPrecondition);
}

TEST_CASE("PGM round trip") {
  RenderJob job;
  job.resolution = 16;
  job.tile = 8;
  job.max_depth = 8;
  const auto r = render(job, Palette::kEscapeDepth);
  const auto path = (std::filesystem::temp_directory_path() / "locuslab_roundtrip.pgm").string();
  write_pgm(path, r.image);
  const auto back = read_pgm(path);
  CHECK(back.width == r.image.width);
  CHECK(back.height == r.image.height);
  CHECK(back.pixels == r.image.pixels);
  std::remove(path.c_str());
  CHECK(error_code([] { read_pgm("/nonexistent/none.pgm"); }) == ErrorCode::kIo);
}

}  // TEST_SUITE
