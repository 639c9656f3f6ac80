#include "locuslab/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "locuslab/error.hpp"

namespace locuslab {

namespace {

double cross(PlanePoint o, PlanePoint a, PlanePoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Letter> letters(std::string_view text) {
  std::vector<Letter> out;
  for (char c : text) out.push_back(c == 'p' ? Letter::kPlus : Letter::kMinus);
  return out;
}

std::vector<Letter> repeat(std::string_view unit, int k) {
  std::vector<Letter> out;
  for (int i = 0; i < k; ++i) {
    auto u = letters(unit);
    out.insert(out.end(), u.begin(), u.end());
  }
  return out;
}

// Flip letters at odd positions; realizes (gamma, lambda) -> (-gamma, -lambda).
SignedWord flip_odd(const SignedWord& w) {
  auto pre = w.preperiod();
  auto per = w.period();
  for (std::size_t i = 1; i < pre.size(); i += 2) pre[i] = flipped(pre[i]);
  if (per.empty()) return SignedWord(pre);
  // The flip pattern on the period depends on the parity of its start, so a
  // period of odd length is doubled first.
  if (per.size() % 2 == 1) {
    auto twice = per;
    twice.insert(twice.end(), per.begin(), per.end());
    per = twice;
  }
  const std::size_t start = pre.size();
  for (std::size_t i = 0; i < per.size(); ++i) {
    if ((start + i) % 2 == 1) per[i] = flipped(per[i]);
  }
  return SignedWord(pre, per);
}

struct Normalization {
  bool flip = false;  // addresses pass through flip_odd
};

// Opposite-sign normalization: swapping coordinates keeps addresses, and
// (gamma, lambda) -> (-lambda, -gamma) flips odd letters.
Normalization normalize_opposite(const Params& params) {
  double g = params.gamma();
  double l = params.lambda();
  if (g > 0.0) std::swap(g, l);
  return {std::abs(g) > std::abs(l)};
}

HullVertex vertex(const SignedWord& w, const Normalization& n, const Params& params) {
  SignedWord a = n.flip ? flip_odd(w) : w;
  return {a, eval_address(a, params, 64)};
}

void sort_ccw(std::vector<HullVertex>& v) {
  PlanePoint c{};
  for (const auto& h : v) c = c + h.point;
  c = (1.0 / static_cast<double>(v.size())) * c;
  std::sort(v.begin(), v.end(), [c](const HullVertex& a, const HullVertex& b) {
    return std::atan2(a.point.y - c.y, a.point.x - c.x) < std::atan2(b.point.y - c.y, b.point.x - c.x);
  });
}

}  // namespace

HullVertexList analytic_vertices(const Params& params, int k_max) {
  if (k_max < 0) throw Error(ErrorCode::kPrecondition, "k_max must be nonnegative");
  if (!(params.gamma() * params.lambda() < 0.0)) {
    throw Error(ErrorCode::kUnsupportedCase,
                "closed-form hull needs parameters of opposite sign; use numeric_hull");
  }
  const Normalization n = normalize_opposite(params);
  std::vector<SignedWord> words{SignedWord({}, letters("mp")), SignedWord({}, letters("pm"))};
  for (int k = 0; k <= k_max; ++k) {
    words.emplace_back(repeat("mp", k), letters("m"));
    words.emplace_back(repeat("pm", k), letters("m"));
    words.emplace_back(repeat("pm", k), letters("p"));
    words.emplace_back(repeat("mp", k), letters("p"));
  }
  HullVertexList out;
  out.k_max = k_max;
  for (const auto& w : words) {
    HullVertex h = vertex(w, n, params);
    const bool seen = std::any_of(out.vertices.begin(), out.vertices.end(),
                                  [&](const HullVertex& o) { return o.address == h.address; });
    if (!seen) out.vertices.push_back(std::move(h));
  }
  sort_ccw(out.vertices);
  return out;
}

std::vector<PlanePoint> numeric_hull(std::span<const PlanePoint> points) {
  if (points.size() < 3) throw Error(ErrorCode::kPrecondition, "hull needs at least 3 points");
  std::vector<PlanePoint> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](PlanePoint a, PlanePoint b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  p.erase(std::unique(p.begin(), p.end()), p.end());
  double scale = 0.0;
  for (auto q : p) scale = std::max({scale, std::abs(q.x), std::abs(q.y)});
  const double tol = 1e-12 * std::max(1.0, scale * scale);
  std::vector<PlanePoint> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= tol) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= tol) --k;
    h[k++] = p[i - 1];
  }
  h.resize(k > 0 ? k - 1 : 0);
  if (h.size() < 3) throw Error(ErrorCode::kDegenerate, "all points are collinear");
  return h;
}

bool in_convex_position(std::span<const PlanePoint> polygon, double tol) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(polygon[i], polygon[(i + 1) % n], polygon[(i + 2) % n]) < -tol) return false;
  }
  return true;
}

double point_segment_distance(PlanePoint q, PlanePoint a, PlanePoint b) {
  const PlanePoint d = b - a;
  const double len2 = d.x * d.x + d.y * d.y;
  double t = len2 > 0 ? ((q.x - a.x) * d.x + (q.y - a.y) * d.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(q, a + t * d);
}

namespace {

// Distance from the axis-aligned box c +- h to the segment [a, b].
double box_segment_distance(PlanePoint c, PlanePoint h, PlanePoint a, PlanePoint b) {
  // Liang-Barsky clip: does the segment meet the box?
  double t0 = 0.0, t1 = 1.0;
  const PlanePoint d = b - a;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - (c.x - h.x), (c.x + h.x) - a.x, a.y - (c.y - h.y), (c.y + h.y) - a.y};
  bool meets = true;
  for (int k = 0; k < 4 && meets; ++k) {
    if (p[k] == 0.0) {
      meets = q[k] >= 0.0;
    } else {
      const double t = q[k] / p[k];
      if (p[k] < 0) t0 = std::max(t0, t);
      else t1 = std::min(t1, t);
      meets = t0 <= t1;
    }
  }
  if (meets) return 0.0;
  // Disjoint convex sets: the distance is attained at a vertex of one of them.
  const auto to_box = [&](PlanePoint q) {
    return std::hypot(std::max(0.0, std::abs(q.x - c.x) - h.x), std::max(0.0, std::abs(q.y - c.y) - h.y));
  };
  double best = std::min(to_box(a), to_box(b));
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) best = std::min(best, point_segment_distance({c.x + sx * h.x, c.y + sy * h.y}, a, b));
  }
  return best;
}

struct Cylinder {
  double lower;
  PlanePoint s;  // sum of the first `depth` terms
  double tx, ty; // gamma^depth, lambda^depth
  int depth;
  bool operator>(const Cylinder& o) const { return lower > o.lower; }
};

}  // namespace

GapSegment gap_segment(const Params& params, int max_depth) {
  if (params.on_diagonal()) throw Error(ErrorCode::kPrecondition, "gap segment needs off-diagonal parameters");
  if (params.gamma() == 0.0 || params.lambda() == 0.0) {
    throw Error(ErrorCode::kDomain, "gap segment needs a nonsingular T");
  }
  SignedWord wa, wb;
  if (params.gamma() * params.lambda() < 0.0) {
    const Normalization n = normalize_opposite(params);
    wa = vertex(SignedWord({}, letters("m")), n, params).address;
    wb = vertex(SignedWord(letters("mp"), letters("m")), n, params).address;
  } else {
    const Normalization n{params.gamma() < 0.0};
    wa = vertex(SignedWord({}, letters("m")), n, params).address;
    wb = vertex(SignedWord(letters("p"), letters("m")), n, params).address;
  }
  GapSegment seg;
  seg.a = {wa, eval_address(wa, params, 64)};
  seg.b = {wb, eval_address(wb, params, 64)};
  const PlanePoint d = seg.b.point - seg.a.point;
  const PlanePoint lo = seg.a.point + 0.25 * d;
  const PlanePoint hi = seg.a.point + 0.75 * d;

  // Branch and bound over cylinders s_u + T^k A, each inside the box
  // s_u +- |T^k| e. The smallest box distance still queued is a lower bound
  // for the distance from [lo, hi] to A; pi(u p^inf) gives upper bounds.
  const double g = params.gamma(), l = params.lambda();
  const PlanePoint e = attractor_half_extent(params);
  const PlanePoint fix{1.0 / (1.0 - g), 1.0 / (1.0 - l)};  // pi(p^inf)
  constexpr std::size_t kBudget = 4'000'000;
  constexpr double kRelGap = 0.01;
  std::priority_queue<Cylinder, std::vector<Cylinder>, std::greater<>> queue;
  queue.push({box_segment_distance({0, 0}, e, lo, hi), {0, 0}, 1.0, 1.0, 0});
  double upper = std::numeric_limits<double>::infinity();
  double lower = 0.0;
  int deepest = 0;
  std::size_t popped = 0;
  while (!queue.empty()) {
    const Cylinder c = queue.top();
    lower = c.lower;
    // A cylinder too deep to split keeps its bound as the final one.
    if ((std::isfinite(upper) && upper - lower <= kRelGap * upper) || popped >= kBudget || upper < 1e-12 || c.depth >= max_depth) break;
    queue.pop();
    ++popped;
    if (c.depth >= max_depth) {
      // Too deep to split: keep its bound as final.
      queue.push({c.lower, c.s, c.tx, c.ty, c.depth});
      lower = c.lower;
      break;
    }
    for (double a : {1.0, -1.0}) {
      Cylinder k{0.0, {c.s.x + a * c.tx, c.s.y + a * c.ty}, c.tx * g, c.ty * l, c.depth + 1};
      upper = std::min(upper, point_segment_distance({k.s.x + k.tx * fix.x, k.s.y + k.ty * fix.y}, lo, hi));
      k.lower = box_segment_distance(k.s, {std::abs(k.tx) * e.x, std::abs(k.ty) * e.y}, lo, hi);
      deepest = std::max(deepest, k.depth);
      if (k.lower < upper) queue.push(k);
    }
  }
  if (queue.empty()) lower = upper;
  seg.clearance = std::min(lower, upper);
  seg.depth = deepest;
  // Inward side: the majority of a modest sample.
  const auto sample = attractor_sample(params, std::min(12, kDefaultMaxSampleDepth));
  const PlanePoint normal{-d.y, d.x};
  double side = 0.0;
  for (const auto& q : sample.points) {
    const PlanePoint rel = q - seg.a.point;
    side += (rel.x * normal.x + rel.y * normal.y) > 0 ? 1.0 : -1.0;
  }
  seg.inward = (side >= 0 ? 1.0 : -1.0) * (1.0 / norm(normal)) * normal;
  if (!(seg.clearance > 0)) {
    throw Error(ErrorCode::kInconclusive, "no positive clearance for the gap segment (upper bound " +
                                              std::to_string(upper) + ")");
  }
  return seg;
}

PlanePoint trap_like_vector(const GapSegment& seg, std::span<const PlanePoint> sample) {
  if (!(seg.clearance > 0)) throw Error(ErrorCode::kPrecondition, "gap segment has no clearance");
  if (sample.empty()) throw Error(ErrorCode::kPrecondition, "empty sample");
  const PlanePoint d = seg.b.point - seg.a.point;
  PlanePoint normal{-d.y, d.x};
  normal = (1.0 / norm(normal)) * normal;
  double side = 0.0;
  for (const auto& q : sample) {
    const PlanePoint rel = q - seg.a.point;
    side += (rel.x * normal.x + rel.y * normal.y) > 0 ? 1.0 : -1.0;
  }
  if (side < 0) normal = -normal;
  const PlanePoint r = seg.a.point + 0.5 * d;
  const double eps_r = seg.clearance / 2.0;
  const PlanePoint v = r + (eps_r / 2.0) * normal;
  return v - seg.a.point;
}

}  // namespace locuslab
