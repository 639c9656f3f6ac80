#pragma once

// Screening for outliers: parameters where a series in B has one simple and
// one even-order zero, off the trivial region. Such a series must end in a
// periodic tail, so each candidate is a root pair of an integer polynomial.

#include <cstdint>
#include <string>
#include <vector>

#include "locuslab/bseries.hpp"
#include "locuslab/core_ifs.hpp"

namespace locuslab {

// Published bounds quoted by the order-of-zeros argument. Not recomputed here.
struct ScreenConstants {
  // Smallest double zero of a series in B lies above this.
  static constexpr double alpha2_lower = 0.668;
  // Approximate smallest triple zero (third zero counted with multiplicity).
  static constexpr double alpha3_approx = 0.7278;
  // 1 / (2 C(5)^(1/5)).
  static constexpr double inv_two_c5 = 0.655;
  // C(4).
  static constexpr double c4 = 0.286;
  // Two table lookups of the third-zero bound psi: psi(g) <= l_max implies g >= g_min.
  struct PsiStep {
    double lambda_max;
    double gamma_min;
  };
  static constexpr PsiStep psi_steps[2] = {{0.7485, 0.67}, {0.7463, 0.69}};
};

struct OutlierCandidate {
  Params params{0.0, 0.0};  // (simple zero, even-order zero)
  BSeries series{{1}};
  ZeroReport simple_zero;
  ZeroReport even_zero;
  Tail tail_case = Tail::kZero;
  std::vector<int> defining_polynomial;
  // |f| of the full series at each zero.
  double series_residual_gamma = 0.0;
  double series_residual_lambda = 0.0;
  // |P| of the defining polynomial at each zero.
  double poly_residual_gamma = 0.0;
  double poly_residual_lambda = 0.0;
  // Derivative magnitudes and bracket signs disagreed about a zero's order.
  bool order_uncertain = false;
};

struct ScreenOptions {
  int limit = 18;
  double verify_tol = 1e-10;
  ZeroSearchOptions zeros{};
  unsigned threads = 0;
};

// Finite parts p of degree <= m_max (constant term 1, last coefficient not
// absorbed by the tail), in order of (degree, coefficients lexicographic).
// Throws kResourceLimit when m_max exceeds options.limit.
std::vector<OutlierCandidate> enumerate_candidates(int m_max, Tail tail, const ScreenOptions& options = {});

// Number of finite parts enumerate_candidates visits.
std::uint64_t enumeration_size(int m_max, Tail tail);

struct ConstraintVerdict {
  bool kept = true;
  std::string reason;  // empty when kept
};

// Order and product constraints. Reasons start with "part1", "part2",
// "alpha2" or "product".
ConstraintVerdict apply_constraints(const OutlierCandidate& c);

}  // namespace locuslab
