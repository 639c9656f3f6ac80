#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "locuslab/parallel.hpp"
#include "locuslab/render.hpp"
#include "locuslab/screen.hpp"

using namespace locuslab;

TEST_SUITE("parallel") {

TEST_CASE("every index runs once") {
  for (unsigned threads : {1u, 2u, 4u, 7u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); }, threads);
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, [](std::size_t) { FAIL("no work expected"); }, 3);
}

TEST_CASE("exceptions propagate") {
  CHECK_THROWS_AS(parallel_for(
                      100,
                      [](std::size_t i) {
                        if (i == 37) throw std::runtime_error("boom");
                      },
                      4),
                  std::runtime_error);
}

TEST_CASE("thread count from the environment") {
  setenv("LOCUSLAB_THREADS", "3", 1);
  CHECK(thread_count() == 3);
  setenv("LOCUSLAB_THREADS", "junk", 1);
  CHECK(thread_count() >= 1);
  unsetenv("LOCUSLAB_THREADS");
  CHECK(thread_count() >= 1);
}

TEST_CASE("results do not depend on the worker count") {
  RenderJob job;
  job.resolution = 32;
  job.tile = 8;
  job.max_depth = 14;
  job.threads = 1;
  const auto one = render(job, Palette::kEscapeDepth);
  job.threads = 5;
  const auto five = render(job, Palette::kEscapeDepth);
  CHECK(one.image.pixels == five.image.pixels);
  CHECK(one.survived == five.survived);

  ScreenOptions a, b;
  a.threads = 1;
  b.threads = 4;
  CHECK(enumerate_candidates(8, Tail::kAllPlus, a).size() == enumerate_candidates(8, Tail::kAllPlus, b).size());
}

}  // TEST_SUITE
