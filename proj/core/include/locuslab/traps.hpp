#pragma once

// Interior-point certification by traps. Everything here is floating point
// with explicit margins; certificates are evidence, not proofs.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "locuslab/bseries.hpp"
#include "locuslab/core_ifs.hpp"

namespace locuslab {

struct PerturbationSolve {
  Params params_start{0.0, 0.0};
  Params params_solved{0.0, 0.0};
  int M = 0;
  // |2 f_{M-1}(x) - x^M w_i| at the solved coordinates.
  double residual_gamma = 0.0;
  double residual_lambda = 0.0;
};

// Zeros of f near params0 must satisfy |f(x)| below this.
inline constexpr double kZeroCheckTol = 1e-8;

// Finds params1 near params0 with normalized_translation(u^M, v^M, params1) = w
// for the words of f. With u_i - v_i = 2 f_i this is 2 f_{M-1}(x) = x^M w_i in
// each coordinate; each equation is solved by bisection on the sign change
// nearest to the starting zero.
// Errors: kPrecondition (params0 not zeros of f), kMagnitude (x^M |w_i|
// dominates f_{M-1} on the radius), kSolveFailure (no bracket or residual > tol).
PerturbationSolve solve_perturbation(const Params& params0, const BSeries& f, PlanePoint w, int M,
                                     double radius, double tol);

struct TrapTolerances {
  double eps = 0.0;          // disk D = N_eps(X)
  double grid = 0.0;         // raster cell edge
  double margin_tol = 0.0;   // every margin must exceed this
  double cover_radius = 0.0; // attractor-to-raster distance bound
  double slack = 0.0;        // raster error charged against each margin
  int gap_depth = 14;
};

struct TrapWitness {
  std::string label;  // "p+", "p-", "q+", "q-"
  PlanePoint point;   // in the plane of the attractor
  SignedWord address; // attractor address of `point`
  double margin = 0.0;            // lower bound in the plane of the attractor
  double normalized_margin = 0.0; // same bound before scaling by T^M
};

struct TrapCertificate {
  Params params_solved{0.0, 0.0};
  SignedWord u;
  SignedWord v;
  int order_m = 0;
  PlanePoint w;
  double disk_eps = 0.0;
  std::array<TrapWitness, 4> witnesses;
  double gap_upper = 0.0;          // cylinder-gap upper bound at params_solved
  double containment_margin = 0.0; // eps - eps/2 for N_{eps/2}(A) inside D
  int boundary_runs = 0;
  TrapTolerances tolerances;
  bool rigorous = false;
  std::optional<PerturbationSolve> solve;
};

// Checks the trap conditions for the words u, v (equal length, u starting with
// p and v with m) at `params`, on a raster with cell edge `grid`.
// Throws kPrecondition for malformed input and kTrapCheck naming the failed
// condition and the amount by which it failed.
TrapCertificate verify_trap(const Params& params, const SignedWord& u, const SignedWord& v, double eps,
                            double grid, double margin_tol = 0.0);

struct CertifyOptions {
  // Truncation orders tried in increasing order; the first order yielding any
  // certificate ends the search.
  std::vector<int> orders{10, 12, 14, 16, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120};
  // eps and grid as fractions of the attractor diameter bound.
  double eps_fraction = 1.0 / 200.0;
  double grid_fraction = 1.0 / 512.0;
  double solve_tol = 1e-13;
  double margin_tol = 0.0;
  unsigned threads = 0;
};

struct CertifyResult {
  std::vector<TrapCertificate> certificates;
  std::vector<std::string> trace;
};

// gap segment + trap-like vectors at params0, words of f, perturbation solve,
// trap verification. Certificates have |params_solved - params0| <= search_radius.
CertifyResult certify_interior(const Params& params0, const BSeries& f, double search_radius,
                               const CertifyOptions& options = {});

// Chain of attractor points from pi(a) to pi(b) through depth-`depth`
// cylinder representatives with hops at most 2 L^depth diam. Throws
// kInconclusive when no chain exists at this depth.
std::vector<PlanePoint> short_hop_path(const Params& params, const SignedWord& a, const SignedWord& b, int depth);

// Hop bound used by short_hop_path.
double short_hop_bound(const Params& params, int depth);

}  // namespace locuslab
