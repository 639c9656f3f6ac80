#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "error_code.hpp"
#include "generators.hpp"
#include "locuslab/core_ifs.hpp"
#include "locuslab/hull.hpp"
#include "locuslab/raster.hpp"
#include "oracles.hpp"

using namespace locuslab;
using doctest::Approx;

namespace {

const Params kFigure(-10.0 / 17.0, 10.0 / 13.0);

double polygon_distance(PlanePoint q, const std::vector<PlanePoint>& poly) {
  double best = INFINITY;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(q, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

bool inside_convex(PlanePoint q, const std::vector<PlanePoint>& ccw, double tol) {
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const auto a = ccw[i], b = ccw[(i + 1) % ccw.size()];
    const double cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
    if (cross < -tol * std::hypot(b.x - a.x, b.y - a.y)) return false;
  }
  return true;
}

const HullVertex* find(const HullVertexList& h, const char* word) {
  const auto w = SignedWord::parse(word);
  for (const auto& v : h.vertices) {
    if (v.address == w) return &v;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("hull") {

TEST_CASE("analytic vertices at the figure parameters") {
  const auto h = analytic_vertices(kFigure, 8);
  CHECK(h.k_max == 8);
  const auto* pm = find(h, "(pm)");
  const auto* mp = find(h, "(mp)");
  REQUIRE(pm != nullptr);
  REQUIRE(mp != nullptr);
  CHECK(pm->point.x == Approx(17.0 / 7.0).epsilon(1e-14));
  CHECK(pm->point.y == Approx(13.0 / 23.0).epsilon(1e-14));
  CHECK(mp->point.x == Approx(-17.0 / 7.0).epsilon(1e-14));
  CHECK(mp->point.y == Approx(-13.0 / 23.0).epsilon(1e-14));
  const auto* a0 = find(h, "(m)");
  REQUIRE(a0 != nullptr);
  CHECK(a0->point.x == Approx(-1.0 / (1.0 + 10.0 / 17.0)).epsilon(1e-14));
  CHECK(a0->point.y == Approx(-1.0 / (1.0 - 10.0 / 13.0)).epsilon(1e-14));
  const auto* a1 = find(h, "mp(m)");
  REQUIRE(a1 != nullptr);
  const double g = kFigure.gamma();
  CHECK(a1->point.x == Approx(-1.0 + g - g * g / (1.0 - g)).epsilon(1e-14));
  CHECK(a1->point.x == Approx(-1.8061).epsilon(1e-4));
  const auto trunc = oracle::address(oracle::letters("mp"), oracle::letters("m"), g, kFigure.lambda(), 30);
  CHECK(a1->point.x == Approx(trunc.x).epsilon(1e-6));
  // Every family member up to k_max is present.
  for (int k = 0; k <= 8; ++k) {
    std::string mpk, pmk;
    for (int i = 0; i < k; ++i) {
      mpk += "mp";
      pmk += "pm";
    }
    for (const std::string& w : {mpk + "(m)", pmk + "(m)", pmk + "(p)", mpk + "(p)"}) {
      CHECK_MESSAGE(find(h, w.c_str()) != nullptr, w);
    }
  }
  std::vector<PlanePoint> pts;
  for (const auto& v : h.vertices) pts.push_back(v.point);
  CHECK(in_convex_position(pts));
}

TEST_CASE("analytic hull matches the numeric hull of a sample") {
  const auto h = analytic_vertices(kFigure, 8);
  std::vector<PlanePoint> apoly;
  for (const auto& v : h.vertices) apoly.push_back(v.point);
  const auto sample = attractor_sample(kFigure, 16);
  const auto numeric = numeric_hull(sample.points);
  const double tol = 1e-6 + sample.hausdorff_bound;
  double worst = 0;
  for (const auto& q : numeric) worst = std::max(worst, polygon_distance(q, apoly));
  for (const auto& q : apoly) worst = std::max(worst, polygon_distance(q, numeric));
  CHECK(worst <= tol);
}

TEST_CASE("same-sign parameters are unsupported analytically") {
  CHECK(error_code([] { analytic_vertices(Params(0.6, 0.7)); }) == ErrorCode::kUnsupportedCase);
  CHECK(error_code([] { analytic_vertices(Params(-0.6, -0.7)); }) == ErrorCode::kUnsupportedCase);
}

TEST_CASE("numeric hull basics") {
  const std::vector<PlanePoint> tri{{0, 0}, {1, 0}, {0, 1}};
  CHECK(numeric_hull(tri).size() == 3);
  const std::vector<PlanePoint> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.2, 0.7}, {0.5, 0}};
  const auto h = numeric_hull(sq);
  CHECK(h.size() == 4);
  CHECK(in_convex_position(h));
  const std::vector<PlanePoint> line{{0, 0}, {1, 1}, {2, 2}};
  CHECK(error_code([&] { numeric_hull(line); }) == ErrorCode::kDegenerate);
  const std::vector<PlanePoint> two{{0, 0}, {1, 1}};
  CHECK(error_code([&] { numeric_hull(two); }) == ErrorCode::kPrecondition);
}

TEST_CASE("analytic hull contains the sample for random opposite-sign parameters") {
  gen::Rng rng(41);
  int done = 0;
  while (done < 25) {
    const double g = -rng.uniform(0.3, 0.95), l = rng.uniform(0.3, 0.95);
    if (std::abs(g * l) >= 0.5) continue;
    const Params p = rng.coin() ? Params(g, l) : Params(l, g);
    ++done;
    const auto h = analytic_vertices(p, 12);
    std::vector<PlanePoint> poly;
    for (const auto& v : h.vertices) poly.push_back(v.point);
    CHECK(in_convex_position(poly));
    const auto s = attractor_sample(p, 16);
    bool all_inside = true;
    for (const auto& q : s.points) all_inside = all_inside && inside_convex(q, poly, 1e-9);
    CHECK(all_inside);
  }
}

TEST_CASE("vertex families converge geometrically") {
  const Params p(-0.55, 0.8);
  const auto lim = eval_address(SignedWord::parse("(mp)"), p, 1);
  std::string mpk;
  double prev_x = 0, prev_y = 0;
  for (int k = 0; k <= 12; ++k) {
    const auto a = eval_address(SignedWord::parse((mpk + "(m)").c_str()), p, 1);
    const double ex = std::abs(a.x - lim.x), ey = std::abs(a.y - lim.y);
    if (k > 0) {
      // One more "mp" multiplies the distance by gamma^2 and lambda^2.
      CHECK(ex / prev_x == Approx(p.gamma() * p.gamma()).epsilon(1e-9));
      CHECK(ey / prev_y == Approx(p.lambda() * p.lambda()).epsilon(1e-9));
    }
    prev_x = ex;
    prev_y = ey;
    mpk += "mp";
  }
}

TEST_CASE("edge slopes of the A family") {
  const Params p = kFigure;
  std::vector<PlanePoint> a;
  std::string mpk;
  for (int k = 0; k <= 6; ++k) {
    a.push_back(eval_address(SignedWord::parse((mpk + "(m)").c_str()), p, 1));
    mpk += "mp";
  }
  const double r = std::pow(p.lambda() / p.gamma(), 2);
  for (std::size_t k = 0; k + 2 < a.size(); ++k) {
    const double s0 = (a[k + 1].y - a[k].y) / (a[k + 1].x - a[k].x);
    const double s1 = (a[k + 2].y - a[k + 1].y) / (a[k + 2].x - a[k + 1].x);
    CHECK(std::abs(s1 / s0) == Approx(r).epsilon(1e-9));
  }
}

TEST_CASE("gap segment") {
  const auto seg = gap_segment(kFigure);
  CHECK(seg.a.address == SignedWord::parse("(m)"));
  CHECK(seg.b.address == SignedWord::parse("mp(m)"));
  CHECK(seg.clearance > 0);
  // Oracle: distance from the middle half of the segment to a depth-16 sample,
  // less the sample's Hausdorff bound, never falls below the reported clearance.
  const auto s = attractor_sample(kFigure, 16);
  double min_d = INFINITY;
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.25 + 0.5 * i / 200.0;
    const PlanePoint q = seg.a.point + t * (seg.b.point - seg.a.point);
    for (const auto& x : s.points) min_d = std::min(min_d, distance(q, x));
  }
  CHECK(seg.clearance <= min_d + s.hausdorff_bound);
  CHECK(min_d - s.hausdorff_bound > 0);

  CHECK(error_code([] { gap_segment(Params(0.6, 0.6)); }) == ErrorCode::kPrecondition);
  const auto trivial = error_code([] { gap_segment(Params(0.8, 0.7)); });
  CHECK((!trivial || *trivial == ErrorCode::kInconclusive));
  // Same sign: m^inf to pm^inf.
  const auto ss = gap_segment(Params(0.55, 0.8));
  CHECK(ss.b.address == SignedWord::parse("p(m)"));
}

TEST_CASE("trap-like vector on an L-shaped set") {
  // X = [0,2]x[0,1] union [0,1]x[0,2]; its hull edge from (2,1) to (1,2) has
  // clearance 1/4 over the middle half.
  auto in_x = [](PlanePoint q) {
    return (q.x >= 0 && q.x <= 2 && q.y >= 0 && q.y <= 1) || (q.x >= 0 && q.x <= 1 && q.y >= 0 && q.y <= 2);
  };
  std::vector<PlanePoint> cloud;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const PlanePoint q{i * 0.05, j * 0.05};
      if (in_x(q)) cloud.push_back(q);
    }
  }
  GapSegment seg;
  seg.a.point = {2, 1};
  seg.b.point = {1, 2};
  seg.clearance = 0.25;
  const PlanePoint w = trap_like_vector(seg, cloud);
  // Midpoint (1.5, 1.5) pushed 1/16 towards the notch corner, minus a.
  CHECK(w.x == Approx(-0.5 - 0.0625 / std::sqrt(2.0)));
  CHECK(w.y == Approx(0.5 - 0.0625 / std::sqrt(2.0)));

  const double h = 0.01;
  const auto grid = RasterGrid::covering({-2, -1}, {3, 4}, h, 2);
  Mask x(grid), xw(grid), u(grid);
  bool overlap = false;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const auto c = grid.center({i, j});
      const bool a = in_x(c), b = in_x(c - w);
      x.set({i, j}, a);
      xw.set({i, j}, b);
      u.set({i, j}, a || b);
      overlap = overlap || (a && b);
    }
  }
  CHECK(overlap);
  const auto boundary = trace_outer_boundary(u);
  std::vector<int> labels;
  for (const auto& c : boundary) labels.push_back(x.at(c) && !xw.at(c) ? 1 : (xw.at(c) && !x.at(c) ? 2 : 0));
  CHECK(cyclic_runs(labels) >= 4);

  // Mirrored segment and cloud give -w.
  GapSegment mirror = seg;
  mirror.a.point = -seg.a.point;
  mirror.b.point = -seg.b.point;
  std::vector<PlanePoint> mcloud;
  for (auto q : cloud) mcloud.push_back(-q);
  const PlanePoint mw = trap_like_vector(mirror, mcloud);
  CHECK(mw.x == Approx(-w.x));
  CHECK(mw.y == Approx(-w.y));

  GapSegment none = seg;
  none.clearance = 0;
  CHECK(error_code([&] { trap_like_vector(none, cloud); }) == ErrorCode::kPrecondition);
}

}  // TEST_SUITE
