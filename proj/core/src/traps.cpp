#include "locuslab/traps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <map>
#include <mutex>

#include "locuslab/error.hpp"
#include "locuslab/hull.hpp"
#include "locuslab/parallel.hpp"
#include "locuslab/raster.hpp"

namespace locuslab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct ScalarSolve {
  double x = 0.0;
  double residual = 0.0;
};

ScalarSolve solve_coordinate(const BSeries& f, double x0, double wi, int M, double radius, double tol,
                             const char* name) {
  const std::size_t n = static_cast<std::size_t>(M - 1);
  const auto F = [&](double x) { return 2.0 * f.eval(x, n) - std::pow(x, M) * wi; };
  const double r = std::min(radius, 0.5 * (1.0 - std::abs(x0)));
  const double lhs = std::pow(std::abs(x0) + r, M) * std::abs(wi);
  const double flo = 2.0 * f.eval(x0 - r, n);
  const double fhi = 2.0 * f.eval(x0 + r, n);
  const double rhs = std::min(std::abs(flo), std::abs(fhi));
  if (!(lhs < rhs)) {
    throw Error(ErrorCode::kMagnitude, std::string(name) + ": x^M |w| = " + fmt(lhs) +
                                           " is not below min |2 f_{M-1}| = " + fmt(rhs) +
                                           " on the radius; increase M");
  }
  if (flo * fhi >= 0) {
    throw Error(ErrorCode::kSolveFailure, std::string(name) + ": f_{M-1} has no sign change within radius " + fmt(r));
  }
  // Nearest sign change of F, scanning outwards from x0.
  constexpr int kSteps = 64;
  const double step = r / kSteps;
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int k = 0; k < kSteps && !found; ++k) {
    for (int side : {1, -1}) {
      const double a = x0 + side * k * step;
      const double b = x0 + side * (k + 1) * step;
      const double fa = F(a);
      const double fb = F(b);
      if (fa == 0.0) return {a, 0.0};
      if (fa * fb < 0 || fb == 0.0) {
        lo = std::min(a, b);
        hi = std::max(a, b);
        found = true;
        break;
      }
    }
  }
  if (!found) throw Error(ErrorCode::kSolveFailure, std::string(name) + ": no bracket within radius " + fmt(r));
  double flo_b = F(lo);
  double mid = 0.5 * (lo + hi);
  double fmid = F(mid);
  while (std::abs(fmid) > tol) {
    if ((fmid < 0) == (flo_b < 0)) {
      lo = mid;
      flo_b = fmid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next <= lo || next >= hi) break;
    mid = next;
    fmid = F(mid);
  }
  if (std::abs(fmid) > tol) {
    throw Error(ErrorCode::kSolveFailure, std::string(name) + ": residual " + fmt(std::abs(fmid)) +
                                              " above tolerance " + fmt(tol));
  }
  return {mid, std::abs(fmid)};
}

}  // namespace

PerturbationSolve solve_perturbation(const Params& params0, const BSeries& f, PlanePoint w, int M, double radius,
                                     double tol) {
  if (M < 1) throw Error(ErrorCode::kPrecondition, "truncation order M must be positive");
  if (!(radius > 0) || !(tol > 0)) throw Error(ErrorCode::kPrecondition, "radius and tol must be positive");
  if (!(std::abs(f.eval(params0.gamma())) <= kZeroCheckTol) ||
      !(std::abs(f.eval(params0.lambda())) <= kZeroCheckTol)) {
    throw Error(ErrorCode::kPrecondition, "starting parameters are not zeros of the series");
  }
  const ScalarSolve g = solve_coordinate(f, params0.gamma(), w.x, M, radius, tol, "gamma");
  const ScalarSolve l = solve_coordinate(f, params0.lambda(), w.y, M, radius, tol, "lambda");
  PerturbationSolve out;
  out.params_start = params0;
  out.params_solved = Params(g.x, l.x);
  out.M = M;
  out.residual_gamma = g.residual;
  out.residual_lambda = l.residual;
  return out;
}

namespace {

Mask threshold(const std::vector<double>& dist, const RasterGrid& grid, double radius) {
  Mask m(grid);
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist[k] <= radius) m.set_index(k);
  }
  return m;
}

[[noreturn]] void trap_fail(const std::string& what) { throw Error(ErrorCode::kTrapCheck, what); }

struct Run {
  int label = 0;
  std::vector<Cell> cells;
};

// Cyclic runs of nonzero labels along the boundary, starting at a run boundary.
std::vector<Run> collect_runs(const std::vector<Cell>& boundary, const std::vector<int>& labels) {
  std::vector<std::pair<Cell, int>> seq;
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    if (labels[k] != 0) seq.emplace_back(boundary[k], labels[k]);
  }
  if (seq.empty()) return {};
  std::size_t start = 0;
  while (start < seq.size() && seq[start].second == seq.front().second) ++start;
  if (start == seq.size()) return {Run{seq.front().second, {}}};
  std::vector<Run> runs;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const auto& [cell, label] = seq[(start + k) % seq.size()];
    if (runs.empty() || runs.back().label != label) runs.push_back({label, {}});
    runs.back().cells.push_back(cell);
  }
  return runs;
}

struct Pick {
  std::size_t index = 0;
  double score = -std::numeric_limits<double>::infinity();
};

// Best representative attractor cell near any boundary cell of the run,
// scored by the distance transform of the other set.
Pick best_witness(const Run& run, const AttractorRaster& own, const std::vector<double>& other_dist, int window) {
  const RasterGrid& g = own.mask.grid();
  Pick best;
  for (const Cell& c : run.cells) {
    for (int dj = -window; dj <= window; ++dj) {
      for (int di = -window; di <= window; ++di) {
        const Cell n{c.i + di, c.j + dj};
        if (!g.contains(n)) continue;
        const std::size_t k = g.index(n);
        if (!own.has_rep[k]) continue;
        if (other_dist[k] > best.score) best = {k, other_dist[k]};
      }
    }
  }
  return best;
}

}  // namespace

TrapCertificate verify_trap(const Params& params, const SignedWord& u, const SignedWord& v, double eps, double grid,
                            double margin_tol) {
  if (!u.is_finite() || !v.is_finite() || u.empty() || v.empty()) {
    throw Error(ErrorCode::kPrecondition, "trap words must be finite and nonempty");
  }
  if (u.at(0) != Letter::kPlus || v.at(0) != Letter::kMinus) {
    throw Error(ErrorCode::kPrecondition, "trap words must start with p (u) and m (v); got " + u.to_string() +
                                              ", " + v.to_string());
  }
  if (!(eps > 0) || !(grid > 0)) throw Error(ErrorCode::kPrecondition, "eps and grid must be positive");
  const PlanePoint w = normalized_translation(u, v, params);
  const int M = static_cast<int>(u.length());

  const PlanePoint ext = attractor_half_extent(params);
  const PlanePoint lo{std::min(-ext.x, w.x - ext.x), std::min(-ext.y, w.y - ext.y)};
  const PlanePoint hi{std::max(ext.x, w.x + ext.x), std::max(ext.y, w.y + ext.y)};
  const int pad = static_cast<int>(std::ceil(eps / grid)) + 8;
  const RasterGrid g = RasterGrid::covering(lo, hi, grid, pad);

  const AttractorRaster rx = paint_attractor(params, g, {0.0, 0.0});
  const AttractorRaster rw = paint_attractor(params, g, w);
  const double cover = std::max(rx.cover_radius, rw.cover_radius);
  const double rho = cover + grid * std::sqrt(0.5);
  // Cells within rho of a painted cell cover the attractor; filling holes
  // gives a raster superset of the filled attractor X.
  Mask X = threshold(distance_transform(rx.mask), g, rho);
  fill_holes(X);
  Mask Xw = threshold(distance_transform(rw.mask), g, rho);
  fill_holes(Xw);
  const std::vector<double> dX = distance_transform(X);
  const std::vector<double> dXw = distance_transform(Xw);
  const double slack = grid * std::sqrt(2.0);

  TrapCertificate cert{params, u, v, M, w, eps, {}, 0.0, 0.0, 0, {}, false, std::nullopt};
  cert.tolerances = {eps, grid, margin_tol, cover, slack, 14};

  // Condition: X and X + w overlap.
  bool overlap = false;
  for (std::size_t k = 0; k < g.size() && !overlap; ++k) overlap = X.at_index(k) && Xw.at_index(k);
  if (!overlap) trap_fail("trap-like overlap: X and X+w are disjoint");

  // Condition: D = N_eps(X) connected.
  const int components = count_components(threshold(dX, g, eps));
  if (components != 1) trap_fail("disk connectivity: N_eps(X) has " + std::to_string(components) + " components");

  // Condition: d(pA, mA) < eps.
  const CylinderGap gap = cylinder_gap(params, cert.tolerances.gap_depth);
  cert.gap_upper = gap.upper;
  if (!(gap.upper < eps)) {
    trap_fail("cylinder gap: upper bound " + fmt(gap.upper) + " is not below eps " + fmt(eps));
  }
  // N_{eps/2}(A) lies in D = N_eps(X) because A lies in X.
  cert.containment_margin = eps - eps / 2.0;

  // Alternation along the outer boundary of X u (X + w).
  Mask U(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (X.at_index(k) || Xw.at_index(k)) U.set_index(k);
  }
  const std::vector<Cell> boundary = trace_outer_boundary(U);
  std::vector<int> labels(boundary.size(), 0);
  for (std::size_t k = 0; k < boundary.size(); ++k) {
    const std::size_t idx = g.index(boundary[k]);
    if (X.at_index(idx) && dXw[idx] - slack - eps > margin_tol) labels[k] = 1;
    if (Xw.at_index(idx) && dX[idx] - slack - eps > margin_tol) labels[k] = 2;
  }
  const auto runs = collect_runs(boundary, labels);
  cert.boundary_runs = cyclic_runs(labels);
  if (cert.boundary_runs < 4) {
    trap_fail("boundary alternation: " + std::to_string(cert.boundary_runs) +
              " runs of points outside the eps-neighbourhood of the other set (need 4)");
  }

  const int window = static_cast<int>(std::ceil(rho / grid)) + 1;
  const double scale = std::min(std::pow(std::abs(params.gamma()), M), std::pow(std::abs(params.lambda()), M));
  int n_p = 0, n_q = 0;
  for (std::size_t r = 0; r < 4; ++r) {
    const Run& run = runs[r];
    const bool in_x = run.label == 1;
    const AttractorRaster& own = in_x ? rx : rw;
    const Pick pick = best_witness(run, own, in_x ? dXw : dX, window);
    const double margin = pick.score - slack - eps;
    if (!(margin > margin_tol)) {
      trap_fail("witness margin: best representative in boundary run " + std::to_string(r) + " has margin " +
                fmt(margin));
    }
    const SignedWord tail = own.rep_address[pick.index].word();
    // A point a of X outside N_eps(X+w) maps to v^M(a) in vA \ u(D); a point
    // a + w of X + w maps to v^M(a + w) = u^M(a) in uA \ v(D).
    const SignedWord address = concat(in_x ? v : u, tail);
    TrapWitness wit;
    wit.label = in_x ? (n_q++ == 0 ? "q+" : "q-") : (n_p++ == 0 ? "p+" : "p-");
    wit.address = address;
    wit.point = eval_address(address, params, 64 + M);
    wit.normalized_margin = margin;
    wit.margin = scale * margin;
    const std::size_t slot = in_x ? 2 + static_cast<std::size_t>(n_q - 1) : static_cast<std::size_t>(n_p - 1);
    cert.witnesses[slot] = std::move(wit);
  }
  return cert;
}

CertifyResult certify_interior(const Params& params0, const BSeries& f, double search_radius,
                               const CertifyOptions& options) {
  if (params0.on_diagonal()) throw Error(ErrorCode::kPrecondition, "certification needs off-diagonal parameters");
  if (!(search_radius > 0)) throw Error(ErrorCode::kPrecondition, "search radius must be positive");
  if (!(std::abs(f.eval(params0.gamma())) <= kZeroCheckTol) ||
      !(std::abs(f.eval(params0.lambda())) <= kZeroCheckTol)) {
    throw Error(ErrorCode::kPrecondition, "parameters are not zeros of the series");
  }
  CertifyResult result;
  GapSegment seg;
  try {
    seg = gap_segment(params0);
  } catch (const Error& e) {
    result.trace.push_back(std::string("gap_segment: ") + e.what());
    return result;
  }
  result.trace.push_back("gap segment " + seg.a.address.to_string() + " -> " + seg.b.address.to_string() +
                         ", clearance " + fmt(seg.clearance) + " at depth " + std::to_string(seg.depth));
  const auto sample = attractor_sample(params0, 12);

  // Trap-like vectors: the canonical one first, then points further along the
  // segment, closer to it, and measured from the other endpoint.
  std::vector<PlanePoint> candidates{trap_like_vector(seg, sample.points)};
  const PlanePoint d = seg.b.point - seg.a.point;
  const PlanePoint inward = (1.0 / norm(candidates[0] - 0.5 * d)) * (candidates[0] - 0.5 * d);
  for (const HullVertex* base : {&seg.a, &seg.b}) {
    for (double t : {0.5, 0.375, 0.625}) {
      for (double s : {1.0, 0.5}) {
        const PlanePoint vpt = seg.a.point + t * d + (s * seg.clearance / 4.0) * inward;
        const PlanePoint cand = vpt - base->point;
        if (std::none_of(candidates.begin(), candidates.end(),
                         [&](PlanePoint c) { return distance(c, cand) < 1e-12; })) {
          candidates.push_back(cand);
        }
      }
    }
  }

  const PlanePoint ext = attractor_half_extent(params0);
  const double diam = 2.0 * norm(ext);
  const double eps = diam * options.eps_fraction;
  const double grid = diam * options.grid_fraction;
  const auto [u_inf, v_inf] = words_from_series(f);

  for (int M : options.orders) {
    const SignedWord uM = u_inf.prefix(static_cast<std::size_t>(M));
    const SignedWord vM = v_inf.prefix(static_cast<std::size_t>(M));
    std::vector<std::optional<TrapCertificate>> found(candidates.size());
    std::vector<std::string> notes(candidates.size());
    parallel_for(
        candidates.size(),
        [&](std::size_t i) {
          const PlanePoint w = candidates[i];
          const std::string tag = "M=" + std::to_string(M) + " w#" + std::to_string(i) + " (" + fmt(w.x) + ", " +
                                  fmt(w.y) + "): ";
          try {
            const PerturbationSolve solve = solve_perturbation(params0, f, w, M, search_radius, options.solve_tol);
            const double moved = std::hypot(solve.params_solved.gamma() - params0.gamma(),
                                            solve.params_solved.lambda() - params0.lambda());
            if (moved > search_radius) {
              notes[i] = tag + "solved parameter moved " + fmt(moved) + " beyond the search radius";
              return;
            }
            TrapCertificate cert = verify_trap(solve.params_solved, uM, vM, eps, grid, options.margin_tol);
            cert.solve = solve;
            notes[i] = tag + "certificate at " + solve.params_solved.to_string();
            found[i] = std::move(cert);
          } catch (const Error& e) {
            notes[i] = tag + std::string(to_string(e.code())) + ": " + e.what();
          }
        },
        options.threads);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      result.trace.push_back(std::move(notes[i]));
      if (found[i]) result.certificates.push_back(std::move(*found[i]));
    }
    if (!result.certificates.empty()) break;
  }
  if (result.certificates.empty()) result.trace.push_back("no certificate: all orders and vectors exhausted");
  return result;
}

double short_hop_bound(const Params& params, int depth) {
  const double diam = 2.0 * norm(attractor_half_extent(params));
  return 2.0 * std::pow(params.contraction(), depth) * diam;
}

std::vector<PlanePoint> short_hop_path(const Params& params, const SignedWord& a, const SignedWord& b, int depth) {
  if (depth < 1) throw Error(ErrorCode::kPrecondition, "depth must be positive");
  const int eval_depth = [&] {
    int dd = 64;
    if (a.is_finite()) dd = std::max(dd, static_cast<int>(a.length()));
    if (b.is_finite()) dd = std::max(dd, static_cast<int>(b.length()));
    return dd;
  }();
  const PlanePoint pa = eval_address(a, params, eval_depth);
  const PlanePoint pb = eval_address(b, params, eval_depth);
  if (a == b) return {pa};
  const double bound = short_hop_bound(params, depth);
  const auto sample = attractor_sample(params, depth);
  const PlanePoint shift{std::pow(params.gamma(), depth) / (1.0 - params.gamma()),
                         std::pow(params.lambda(), depth) / (1.0 - params.lambda())};
  std::vector<PlanePoint> nodes;
  nodes.reserve(sample.points.size() + 2);
  nodes.push_back(pa);
  for (const auto& s : sample.points) nodes.push_back(s + shift);  // pi(u p^inf)
  nodes.push_back(pb);
  const std::size_t target = nodes.size() - 1;

  // Spatial hash with cells of edge `bound`.
  std::map<std::pair<long long, long long>, std::vector<std::size_t>> buckets;
  auto key = [bound](PlanePoint p) {
    return std::make_pair(static_cast<long long>(std::floor(p.x / bound)), static_cast<long long>(std::floor(p.y / bound)));
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) buckets[key(nodes[i])].push_back(i);
  std::vector<std::size_t> parent(nodes.size(), std::numeric_limits<std::size_t>::max());
  std::deque<std::size_t> queue{0};
  parent[0] = 0;
  while (!queue.empty() && parent[target] == std::numeric_limits<std::size_t>::max()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    const auto [kx, ky] = key(nodes[cur]);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find({kx + dx, ky + dy});
        if (it == buckets.end()) continue;
        for (std::size_t nb : it->second) {
          if (parent[nb] != std::numeric_limits<std::size_t>::max()) continue;
          if (distance(nodes[cur], nodes[nb]) > bound) continue;
          parent[nb] = cur;
          queue.push_back(nb);
        }
      }
    }
  }
  if (parent[target] == std::numeric_limits<std::size_t>::max()) {
    throw Error(ErrorCode::kInconclusive, "no short-hop chain with hops <= " + fmt(bound) + " at depth " +
                                              std::to_string(depth) + "; increase depth");
  }
  std::vector<PlanePoint> path;
  for (std::size_t cur = target; cur != 0; cur = parent[cur]) path.push_back(nodes[cur]);
  path.push_back(nodes[0]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace locuslab
