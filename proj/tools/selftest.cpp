#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "locuslab/bseries.hpp"
#include "locuslab/core_ifs.hpp"
#include "locuslab/hull.hpp"
#include "locuslab/polynomial.hpp"
#include "locuslab/render.hpp"
#include "locuslab/screen.hpp"

namespace locuslab::cli {

namespace {

struct Check {
  const char* name;
  std::function<std::string()> run;  // empty string on success
};

std::string trivial_region_survives() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int done = 0;
  while (done < 100) {
    const double g = u(rng), l = u(rng);
    const double prod = std::abs(g * l);
    if (prod < 0.5 || prod >= 0.98) continue;
    ++done;
    if (!membership(Params(g, l), 20).survived()) return "escaped at " + Params(g, l).to_string();
  }
  return "";
}

std::string small_params_escape() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.499, 0.499);
  for (int k = 0; k < 200; ++k) {
    const Params p(u(rng), u(rng));
    const auto r = membership(p, 20);
    if (r.survived() || r.depth != 0) return "no root escape at " + p.to_string();
  }
  return "";
}

double polygon_distance(PlanePoint q, const std::vector<PlanePoint>& poly) {
  double best = INFINITY;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(q, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

std::string hull_matches_sample() {
  const Params p(-10.0 / 17.0, 10.0 / 13.0);
  const auto analytic = analytic_vertices(p, 8);
  std::vector<PlanePoint> apoly;
  for (const auto& v : analytic.vertices) apoly.push_back(v.point);
  if (!in_convex_position(apoly)) return "analytic vertices not in convex position";
  const auto sample = attractor_sample(p, 14);
  const auto numeric = numeric_hull(sample.points);
  const double tol = 1e-6 + sample.hausdorff_bound;
  for (const auto& q : numeric) {
    if (polygon_distance(q, apoly) > tol) return "numeric vertex far from analytic hull";
  }
  for (const auto& q : apoly) {
    if (polygon_distance(q, numeric) > tol) return "analytic vertex far from numeric hull";
  }
  return "";
}

std::string root_products() {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-1, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> c(21);
    c[0] = 1;
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = coef(rng);
    int k = 0;
    double prod = 1.0;
    for (auto z : complex_roots(c)) {
      if (std::abs(z) <= 0.95) {
        ++k;
        prod *= std::abs(z);
      }
    }
    if (k > 0 && prod < root_product_bound(k) * (1 - 1e-9)) return "product below C(k)";
  }
  return "";
}

std::string tail_polynomials_agree() {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coef(-1, 1), len(0, 10), tl(1, 4);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> p(static_cast<std::size_t>(len(rng)) + 1);
    p[0] = 1;
    for (std::size_t i = 1; i < p.size(); ++i) p[i] = coef(rng);
    const Tail tail = static_cast<Tail>(tl(rng));
    const BSeries f(p, tail);
    const Polynomial P = Polynomial::from_integers(tail_polynomial(tail, p));
    const double factor = tail == Tail::kAllPlus || tail == Tail::kAllMinus ? 1.0 : -1.0;
    for (double x = -0.95; x <= 0.95; x += 0.05) {
      const double expect = (1.0 - factor * x) * f.eval(x);
      if (std::abs(P(x) - expect) > 1e-9) return "mismatch for " + f.to_string();
    }
  }
  return "";
}

std::string screen_is_empty() {
  for (Tail t : {Tail::kZero, Tail::kAllPlus, Tail::kAllMinus, Tail::kAltPlusEven, Tail::kAltMinusEven}) {
    for (const auto& c : enumerate_candidates(8, t)) {
      if (apply_constraints(c).kept) return "candidate kept: " + c.series.to_string();
    }
  }
  return "";
}

}  // namespace

bool run_selftest(std::ostream& os) {
  const std::vector<Check> checks{
      {"trivial region survives", trivial_region_survives},
      {"zero bound escapes at depth 0", small_params_escape},
      {"analytic hull matches sample hull", hull_matches_sample},
      {"root product bound", root_products},
      {"tail polynomials match series", tail_polynomials_agree},
      {"no screened outliers to degree 8", screen_is_empty},
  };
  bool ok = true;
  for (const auto& c : checks) {
    std::string why;
    try {
      why = c.run();
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    os << (why.empty() ? "PASS " : "FAIL ") << c.name << (why.empty() ? "" : ": " + why) << "\n";
    ok = ok && why.empty();
  }
  return ok;
}

}  // namespace locuslab::cli
