#pragma once

// Convex hull of the attractor. For parameters of opposite sign the hull
// vertices have closed-form addresses; the numeric hull is the oracle.

#include <span>
#include <vector>

#include "locuslab/core_ifs.hpp"

namespace locuslab {

struct HullVertex {
  SignedWord address;
  PlanePoint point;
};

struct HullVertexList {
  // Counterclockwise boundary order.
  std::vector<HullVertex> vertices;
  int k_max = 0;
};

inline constexpr int kDefaultHullKMax = 12;

// pi((mp)^inf), pi((pm)^inf) and the families
//   A_k = (mp)^k m^inf, B_k = (pm)^k m^inf, C_k = (pm)^k p^inf, D_k = (mp)^k p^inf
// for k = 0..k_max. Parameters are first brought to gamma < 0 < lambda,
// |gamma| <= |lambda| by the symmetries of the family; the addresses are
// mapped back and evaluated at the original parameters.
// Same-sign parameters throw kUnsupportedCase (use numeric_hull).
HullVertexList analytic_vertices(const Params& params, int k_max = kDefaultHullKMax);

// Monotone chain, counterclockwise, collinear points dropped.
// Throws kPrecondition for fewer than 3 points and kDegenerate when all are collinear.
std::vector<PlanePoint> numeric_hull(std::span<const PlanePoint> points);

// True when every turn of the closed polygon is a left turn (cross > -tol).
bool in_convex_position(std::span<const PlanePoint> polygon, double tol = 1e-10);

struct GapSegment {
  HullVertex a;
  HullVertex b;
  // Lower bound for the distance from the middle half of [a, b] to the
  // attractor, within 1% of the true distance unless the search ran out.
  double clearance = 0.0;
  int depth = 0;  // deepest cylinder examined
  // Unit normal pointing from the segment towards the bulk of the attractor.
  PlanePoint inward{};
};

// A segment between two attractor points whose middle half stays clear of the
// attractor. Opposite signs: A_0 A_1 of the normalized parameters; same sign:
// pi(m^inf) pi(pm^inf). Cylinders are refined near the segment only, down to
// `max_depth` letters. Throws kInconclusive when no positive bound is found.
GapSegment gap_segment(const Params& params, int max_depth = 200);

// w = v - a where v is the segment midpoint pushed a quarter clearance towards
// the attractor side (majority of `sample`).
PlanePoint trap_like_vector(const GapSegment& seg, std::span<const PlanePoint> sample);

// Signed distance helper used by the gap scan: distance from q to [a, b].
double point_segment_distance(PlanePoint q, PlanePoint a, PlanePoint b);

}  // namespace locuslab
