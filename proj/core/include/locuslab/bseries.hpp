#pragma once

// The class B of power series 1 + sum a_n x^n with a_n in {-1, 0, 1}, stored
// as a finite coefficient list followed by one of five periodic tails.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locuslab/polynomial.hpp"

namespace locuslab {

enum class Tail : std::uint8_t {
  kZero,
  kAllPlus,
  kAllMinus,
  kAltPlusEven,   // even indices +1, odd indices -1
  kAltMinusEven,  // even indices -1, odd indices +1
};

std::string_view to_string(Tail tail);
// Accepts "", "(+)", "(-)", "(+-)", "(-+)" as well as the names
// "zero", "plus", "minus", "alt_plus_even", "alt_minus_even".
Tail parse_tail(std::string_view text);

// Truncation degree used to request the full series.
inline constexpr std::size_t kInfinite = static_cast<std::size_t>(-1);

class BSeries {
 public:
  // coeffs[0] must be +1 and every entry in {-1, 0, 1}; throws kNormalization.
  explicit BSeries(std::vector<int> coeffs, Tail tail = Tail::kZero);

  // "+-0-(+)" = 1 - x - x^3 + x^4 + x^5 + ...
  static BSeries parse(std::string_view text);
  std::string to_string() const;

  const std::vector<std::int8_t>& coeffs() const noexcept { return coeffs_; }
  Tail tail() const noexcept { return tail_; }
  bool is_finite() const noexcept { return tail_ == Tail::kZero; }
  // Coefficient a_i, tail included.
  int coefficient(std::size_t i) const noexcept;

  // f_n(x) = sum_{i<=n} a_i x^i; n = kInfinite sums the tail in closed form
  // and requires |x| < 1 (throws kDomain otherwise).
  double eval(double x, std::size_t n = kInfinite) const;
  // Taylor coefficients of f_n at x0 up to `order` (f^(j)(x0) = j! t_j).
  std::vector<double> taylor(double x0, int order, std::size_t n = kInfinite) const;
  // Taylor coefficients of the majorant sum |a_i| x^i at |x0|.
  std::vector<double> taylor_scale(double x0, int order, std::size_t n = kInfinite) const;

  // The finite series f_n.
  BSeries truncated(std::size_t n) const;
  // f(-x); flips odd coefficients.
  BSeries reflected() const;
  // Finite part as a polynomial; for finite series this is the whole series.
  Polynomial finite_part() const;

  friend bool operator==(const BSeries&, const BSeries&) = default;

 private:
  std::vector<std::int8_t> coeffs_;
  Tail tail_ = Tail::kZero;
};

struct ZeroReport {
  double location = 0.0;
  int order_estimate = 1;
  bool is_sign_change = true;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int sign_lo = 0;
  int sign_hi = 0;
  double residual = 0.0;
};

struct ZeroSearchOptions {
  double lo = -0.999;
  double hi = 0.999;
  double grid = 1e-3;
  // Bisection stops when the bracket is narrower than this.
  double tol = 1e-14;
  // A critical point counts as an even-order zero when |f| is below this.
  double residual_tol = 1e-10;
  // Relative threshold on Taylor coefficients for the order estimate.
  double order_tol = 1e-5;
  int max_order = 12;
};

// Real zeros of f_n in [lo, hi]: sign changes on the grid refined by
// bisection, plus even-order zeros found as critical points with tiny |f|.
std::vector<ZeroReport> find_real_zeros(const BSeries& f, std::size_t n = kInfinite,
                                        const ZeroSearchOptions& options = {});
std::vector<ZeroReport> find_real_zeros(const Polynomial& p, const ZeroSearchOptions& options = {});

// Order estimate of a zero from its Taylor coefficients and their majorant
// scales: the smallest j >= 1 with |t_j| > order_tol * max(1, scale_j).
int estimate_zero_order(std::span<const double> taylor, std::span<const double> scale,
                        double order_tol);

enum class PropertyUVerdict { kHoldsUpToNMax, kFailsWithWitness, kInconclusive };
std::string_view to_string(PropertyUVerdict verdict);

struct PropertyUWitness {
  double eps = 0.0;
  std::size_t n = 0;
  std::vector<ZeroReport> zeros;        // zeros of f_n in the ball
  std::vector<double> critical_points;  // critical points of f_n in the ball, zeros excluded
};

struct PropertyUResult {
  PropertyUVerdict verdict = PropertyUVerdict::kInconclusive;
  // threshold[k]: first n after which every truncation was good for eps_schedule[k],
  // or n_max + 1 when the last truncation was bad.
  std::vector<std::size_t> thresholds;
  std::optional<PropertyUWitness> witness;
};

struct PropertyUOptions {
  std::vector<double> eps_schedule{1e-2, 1e-3, 1e-4};
  std::size_t n_max = 400;
  // |f(zero)| must be below this for the zero to count as verified.
  double zero_tol = 1e-9;
};

PropertyUResult property_u_probe(const BSeries& f, double zero, const PropertyUOptions& options = {});

// C(n) = (1 + 1/n)^(-n/2) (1 + n)^(-1/2), a lower bound for the product of the
// moduli of n zeros of a series in B inside the unit disk.
double root_product_bound(int n);
// D(n) = C(n)^(1/n).
double root_product_bound_root(int n);

enum class RegionClass { kTrivialN, kNontrivial, kOutOfDomain };
std::string_view to_string(RegionClass region);

// Trivial part of the locus: 1/2 <= |gamma * lambda| < 1 with both |.| < 1.
RegionClass trivial_region_test(double gamma, double lambda);

// Even part g(y) = 1 + sum a_{2n} y^n; f(t) = f(-t) = 0 implies g(t^2) = 0.
BSeries antidiagonal_reduce(const BSeries& f);

// Integer polynomial sharing the zeros of p + tail in (-1, 1):
//   all_plus:  (1-x) p + x^{m+1}       all_minus:      (1-x) p - x^{m+1}
//   alt_plus_even: (1+x) p + (-1)^{m+1} x^{m+1}
//   alt_minus_even: (1+x) p - (-1)^{m+1} x^{m+1}
// where m = deg p (the tail starts at index m + 1). kZero returns p.
std::vector<int> tail_polynomial(Tail tail, std::span<const int> finite_part);
std::vector<int> tail_polynomial(const BSeries& f);

}  // namespace locuslab
