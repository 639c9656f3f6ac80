#include "locuslab/screen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "locuslab/error.hpp"
#include "locuslab/parallel.hpp"
#include "locuslab/polynomial.hpp"

namespace locuslab {

namespace {

int tail_coefficient(Tail tail, int i) {
  switch (tail) {
    case Tail::kZero: return 0;
    case Tail::kAllPlus: return 1;
    case Tail::kAllMinus: return -1;
    case Tail::kAltPlusEven: return i % 2 == 0 ? 1 : -1;
    case Tail::kAltMinusEven: return i % 2 == 0 ? -1 : 1;
  }
  return 0;
}

// The two admissible last coefficients at degree m, ascending.
std::vector<int> last_choices(Tail tail, int m) {
  std::vector<int> out;
  const int absorbed = tail_coefficient(tail, m);
  for (int a = -1; a <= 1; ++a) {
    if (a != absorbed) out.push_back(a);
  }
  return out;
}

std::uint64_t pow3(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

// Coefficients for index k in mixed radix (3, ..., 3, 2), a_1 most significant.
std::vector<int> finite_part_at(int m, std::uint64_t k, const std::vector<int>& last) {
  std::vector<int> c(static_cast<std::size_t>(m) + 1, 0);
  c[0] = 1;
  if (m == 0) return c;
  c[static_cast<std::size_t>(m)] = last[k % last.size()];
  k /= last.size();
  for (int i = m - 1; i >= 1; --i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(k % 3) - 1;
    k /= 3;
  }
  return c;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Re-examines a zero of the full series: the order from derivative magnitudes
// and the parity from signs on shrinking brackets must agree.
ZeroReport classify(const BSeries& f, double x, const ZeroSearchOptions& o, bool& uncertain) {
  ZeroReport r;
  r.location = x;
  r.residual = std::abs(f.eval(x));
  const auto t = f.taylor(x, o.max_order);
  const auto s = f.taylor_scale(x, o.max_order);
  r.order_estimate = estimate_zero_order(t, s, o.order_tol);
  int parity = -1;
  for (double d : {1e-3, 1e-4, 1e-5}) {
    const int lo = sign_of(f.eval(x - d));
    const int hi = sign_of(f.eval(x + d));
    const int p = lo * hi < 0 ? 1 : (lo * hi > 0 ? 0 : -1);
    if (parity == -1) {
      parity = p;
      r.bracket_lo = x - d;
      r.bracket_hi = x + d;
      r.sign_lo = lo;
      r.sign_hi = hi;
    }
    if (p == -1 || p != parity) uncertain = true;
  }
  r.is_sign_change = parity == 1;
  if (parity >= 0 && r.order_estimate % 2 != parity) {
    uncertain = true;
    // Trust the signs for the parity, as find_real_zeros does.
    ++r.order_estimate;
  }
  return r;
}

void screen_one(const std::vector<int>& p, Tail tail, const ScreenOptions& opt, std::vector<OutlierCandidate>& out) {
  const std::vector<int> poly = tail_polynomial(tail, p);
  // Even-order zeros need a repeated factor; this rejects almost everything exactly.
  if (repeated_factor_degree_mod_p(poly) == 0) return;

  const Polynomial P = Polynomial::from_integers(poly);
  std::vector<ZeroReport> roots;
  for (const auto& z : find_real_zeros(P, opt.zeros)) {
    // No series in B vanishes inside |x| < 1/2.
    if (std::abs(z.location) >= 0.5) roots.push_back(z);
  }
  if (roots.size() < 2) return;

  const BSeries f(p, tail);
  for (const auto& e : roots) {
    if (e.order_estimate % 2 != 0) continue;
    for (const auto& s : roots) {
      if (s.order_estimate != 1 || s.location == e.location) continue;
      if (std::abs(s.location * e.location) >= 0.5) continue;
      OutlierCandidate c;
      c.series = f;
      c.tail_case = tail;
      c.defining_polynomial = poly;
      c.params = Params(s.location, e.location);
      c.series_residual_gamma = std::abs(f.eval(s.location));
      c.series_residual_lambda = std::abs(f.eval(e.location));
      if (c.series_residual_gamma >= opt.verify_tol || c.series_residual_lambda >= opt.verify_tol) continue;
      c.poly_residual_gamma = std::abs(P(s.location));
      c.poly_residual_lambda = std::abs(P(e.location));
      c.simple_zero = classify(f, s.location, opt.zeros, c.order_uncertain);
      c.even_zero = classify(f, e.location, opt.zeros, c.order_uncertain);
      out.push_back(std::move(c));
    }
  }
}

}  // namespace

std::uint64_t enumeration_size(int m_max, Tail tail) {
  std::uint64_t n = m_max >= 0 ? 1 : 0;
  for (int m = 1; m <= m_max; ++m) n += pow3(m - 1) * last_choices(tail, m).size();
  return n;
}

std::vector<OutlierCandidate> enumerate_candidates(int m_max, Tail tail, const ScreenOptions& options) {
  if (m_max < 0) throw Error(ErrorCode::kPrecondition, "m_max must be nonnegative");
  if (m_max > options.limit) {
    throw Error(ErrorCode::kResourceLimit, "m_max " + std::to_string(m_max) + " exceeds the enumeration limit " +
                                               std::to_string(options.limit));
  }
  constexpr std::uint64_t kChunk = 4096;
  std::vector<OutlierCandidate> out;
  for (int m = 0; m <= m_max; ++m) {
    const auto last = last_choices(tail, m);
    const std::uint64_t count = m == 0 ? 1 : pow3(m - 1) * last.size();
    const std::size_t chunks = static_cast<std::size_t>((count + kChunk - 1) / kChunk);
    std::vector<std::vector<OutlierCandidate>> found(chunks);
    parallel_for(
        chunks,
        [&](std::size_t ch) {
          const std::uint64_t end = std::min<std::uint64_t>(count, (ch + 1) * kChunk);
          for (std::uint64_t k = ch * kChunk; k < end; ++k) {
            screen_one(finite_part_at(m, k, last), tail, options, found[ch]);
          }
        },
        options.threads);
    for (auto& v : found) {
      for (auto& c : v) out.push_back(std::move(c));
    }
  }
  return out;
}

ConstraintVerdict apply_constraints(const OutlierCandidate& c) {
  using K = ScreenConstants;
  const double g = c.params.gamma();
  const double l = c.params.lambda();
  const int og = c.simple_zero.order_estimate;
  const int ol = c.even_zero.order_estimate;
  const bool nontrivial = std::abs(g * l) < 0.5;
  char buf[160];

  if (nontrivial && og >= 2 && ol >= 2) return {false, "part1: both zeros have order >= 2"};

  for (auto [x, o] : {std::pair{g, og}, std::pair{l, ol}}) {
    if (o >= 2 && std::abs(x) < K::alpha2_lower) {
      std::snprintf(buf, sizeof buf, "alpha2: zero of order %d at %.6f below %.3f", o, x, K::alpha2_lower);
      return {false, buf};
    }
  }

  // Both positive with the smaller zero multiple: the psi chain closes.
  if (nontrivial && g > 0 && l > 0) {
    const bool g_small = g < l;
    const double small = g_small ? g : l;
    const double big = g_small ? l : g;
    const int small_order = g_small ? og : ol;
    if (small_order >= 2) {
      double lambda_max = 0.5 / K::alpha2_lower;
      std::string step = "lambda above 0.5/alpha2";
      if (big <= lambda_max) {
        step = "psi table";
        for (const auto& ps : K::psi_steps) {
          if (small < ps.gamma_min) break;
          lambda_max = 0.5 / ps.gamma_min;
        }
        if (lambda_max < K::alpha3_approx) step = "lambda bound below alpha3";
      }
      std::snprintf(buf, sizeof buf, "part2: smaller positive zero %.6f has order %d (%s)", small, small_order,
                    step.c_str());
      return {false, buf};
    }
  }

  // Product of the moduli of the zeros inside |z| <= max(|g|, |l|).
  std::vector<double> coeffs(c.defining_polynomial.begin(), c.defining_polynomial.end());
  const double r = std::max(std::abs(g), std::abs(l));
  int n = 0;
  double product = 1.0;
  for (auto z : complex_roots(coeffs)) {
    if (std::abs(z) <= r * (1.0 + 1e-9)) {
      ++n;
      product *= std::abs(z);
    }
  }
  if (n >= 1) {
    const double bound = root_product_bound(n);
    if (product < bound * (1.0 - 1e-9)) {
      std::snprintf(buf, sizeof buf, "product: %d zeros with product %.6g below C(%d) = %.6g", n, product, n, bound);
      return {false, buf};
    }
  }
  return {};
}

}  // namespace locuslab
