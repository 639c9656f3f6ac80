#include "locuslab/bseries.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>

#include "locuslab/error.hpp"

namespace locuslab {

std::string_view to_string(Tail tail) {
  switch (tail) {
    case Tail::kZero: return "zero";
    case Tail::kAllPlus: return "all_plus";
    case Tail::kAllMinus: return "all_minus";
    case Tail::kAltPlusEven: return "alt_plus_even";
    case Tail::kAltMinusEven: return "alt_minus_even";
  }
  return "zero";
}

namespace {

std::string_view tail_token(Tail tail) {
  switch (tail) {
    case Tail::kZero: return "";
    case Tail::kAllPlus: return "(+)";
    case Tail::kAllMinus: return "(-)";
    case Tail::kAltPlusEven: return "(+-)";
    case Tail::kAltMinusEven: return "(-+)";
  }
  return "";
}

int tail_coefficient(Tail tail, std::size_t i) {
  const bool even = i % 2 == 0;
  switch (tail) {
    case Tail::kZero: return 0;
    case Tail::kAllPlus: return 1;
    case Tail::kAllMinus: return -1;
    case Tail::kAltPlusEven: return even ? 1 : -1;
    case Tail::kAltMinusEven: return even ? -1 : 1;
  }
  return 0;
}

// The tail sum_{i>=K} t_i x^i equals sign * x^K / (1 - ratio * x).
struct TailForm {
  double sign = 0.0;
  double ratio = 1.0;
};

TailForm tail_form(Tail tail, std::size_t k) {
  const double parity = k % 2 == 0 ? 1.0 : -1.0;
  switch (tail) {
    case Tail::kZero: return {0.0, 1.0};
    case Tail::kAllPlus: return {1.0, 1.0};
    case Tail::kAllMinus: return {-1.0, 1.0};
    case Tail::kAltPlusEven: return {parity, -1.0};
    case Tail::kAltMinusEven: return {-parity, -1.0};
  }
  return {0.0, 1.0};
}

double horner(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Taylor coefficients at x0 of sign * x^K / (1 - ratio x), added into out.
void add_tail_taylor(TailForm form, std::size_t k, double x0, std::span<double> out) {
  if (form.sign == 0.0) return;
  const std::size_t order = out.size();
  std::vector<double> a(order, 0.0), b(order, 0.0);
  double binom = 1.0;
  for (std::size_t j = 0; j < order && j <= k; ++j) {
    a[j] = binom * std::pow(x0, static_cast<double>(k - j));
    binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
  }
  const double denom = 1.0 - form.ratio * x0;
  double term = 1.0 / denom;
  for (std::size_t j = 0; j < order; ++j) {
    b[j] = term;
    term *= form.ratio / denom;
  }
  for (std::size_t j = 0; j < order; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i <= j; ++i) s += a[i] * b[j - i];
    out[j] += form.sign * s;
  }
}

}  // namespace

Tail parse_tail(std::string_view text) {
  if (text.empty() || text == "zero") return Tail::kZero;
  if (text == "(+)" || text == "plus" || text == "all_plus") return Tail::kAllPlus;
  if (text == "(-)" || text == "minus" || text == "all_minus") return Tail::kAllMinus;
  if (text == "(+-)" || text == "alt_plus_even") return Tail::kAltPlusEven;
  if (text == "(-+)" || text == "alt_minus_even") return Tail::kAltMinusEven;
  throw Error(ErrorCode::kParse, "unknown tail '" + std::string(text) + "'");
}

BSeries::BSeries(std::vector<int> coeffs, Tail tail) : tail_(tail) {
  if (coeffs.empty() || coeffs[0] != 1) {
    throw Error(ErrorCode::kNormalization, "series must start with constant coefficient 1");
  }
  for (int c : coeffs) {
    if (c < -1 || c > 1) {
      throw Error(ErrorCode::kNormalization, "coefficient " + std::to_string(c) + " not in {-1,0,1}");
    }
  }
  // Trailing coefficients that agree with the tail are absorbed into it.
  while (coeffs.size() > 1 && coeffs.back() == tail_coefficient(tail, coeffs.size() - 1)) {
    coeffs.pop_back();
  }
  coeffs_.assign(coeffs.begin(), coeffs.end());
}

BSeries BSeries::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  std::vector<int> coeffs;
  std::size_t i = 0;
  for (; i < text.size() && text[i] != '('; ++i) {
    switch (text[i]) {
      case '+': coeffs.push_back(1); break;
      case '-': coeffs.push_back(-1); break;
      case '0': coeffs.push_back(0); break;
      default:
        throw Error(ErrorCode::kParse, std::string("unexpected character '") + text[i] + "' in series");
    }
  }
  if (coeffs.empty()) throw Error(ErrorCode::kParse, "series needs at least the constant coefficient");
  return BSeries(std::move(coeffs), parse_tail(text.substr(i)));
}

std::string BSeries::to_string() const {
  std::string out;
  for (auto c : coeffs_) out += c > 0 ? '+' : (c < 0 ? '-' : '0');
  out += tail_token(tail_);
  return out;
}

int BSeries::coefficient(std::size_t i) const noexcept {
  return i < coeffs_.size() ? coeffs_[i] : tail_coefficient(tail_, i);
}

namespace {

std::vector<double> dense_coefficients(const BSeries& f, std::size_t n) {
  std::vector<double> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = f.coefficient(i);
  return c;
}

std::vector<double> finite_coefficients(const BSeries& f) {
  return std::vector<double>(f.coeffs().begin(), f.coeffs().end());
}

// Effective truncation: a finite series needs no terms past its length.
std::size_t effective_n(const BSeries& f, std::size_t n) {
  if (f.is_finite() && (n == kInfinite || n >= f.coeffs().size())) return f.coeffs().size() - 1;
  return n;
}

}  // namespace

double BSeries::eval(double x, std::size_t n) const {
  n = effective_n(*this, n);
  if (n != kInfinite) {
    return horner(dense_coefficients(*this, n), x);
  }
  if (!(std::abs(x) < 1.0)) {
    throw Error(ErrorCode::kDomain, "infinite series needs |x| < 1");
  }
  const std::size_t k = coeffs_.size();
  const TailForm form = tail_form(tail_, k);
  return horner(finite_coefficients(*this), x) +
         form.sign * std::pow(x, static_cast<double>(k)) / (1.0 - form.ratio * x);
}

std::vector<double> BSeries::taylor(double x0, int order, std::size_t n) const {
  if (order < 0) throw Error(ErrorCode::kPrecondition, "negative Taylor order");
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  n = effective_n(*this, n);
  if (n != kInfinite) {
    taylor_coefficients(dense_coefficients(*this, n), x0, out);
    return out;
  }
  if (!(std::abs(x0) < 1.0)) throw Error(ErrorCode::kDomain, "infinite series needs |x| < 1");
  taylor_coefficients(finite_coefficients(*this), x0, out);
  add_tail_taylor(tail_form(tail_, coeffs_.size()), coeffs_.size(), x0, out);
  return out;
}

std::vector<double> BSeries::taylor_scale(double x0, int order, std::size_t n) const {
  if (order < 0) throw Error(ErrorCode::kPrecondition, "negative Taylor order");
  std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
  const double ax = std::abs(x0);
  n = effective_n(*this, n);
  if (n != kInfinite) {
    auto c = dense_coefficients(*this, n);
    for (auto& v : c) v = std::abs(v);
    taylor_coefficients(c, ax, out);
    return out;
  }
  if (!(ax < 1.0)) throw Error(ErrorCode::kDomain, "infinite series needs |x| < 1");
  auto c = finite_coefficients(*this);
  for (auto& v : c) v = std::abs(v);
  taylor_coefficients(c, ax, out);
  if (!is_finite()) add_tail_taylor({1.0, 1.0}, coeffs_.size(), ax, out);
  return out;
}

BSeries BSeries::truncated(std::size_t n) const {
  n = effective_n(*this, n);
  if (n == kInfinite) return *this;
  std::vector<int> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[i] = coefficient(i);
  return BSeries(std::move(c), Tail::kZero);
}

BSeries BSeries::reflected() const {
  std::vector<int> c(coeffs_.begin(), coeffs_.end());
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  Tail t = tail_;
  switch (tail_) {
    case Tail::kZero: break;
    case Tail::kAllPlus: t = Tail::kAltPlusEven; break;
    case Tail::kAllMinus: t = Tail::kAltMinusEven; break;
    case Tail::kAltPlusEven: t = Tail::kAllPlus; break;
    case Tail::kAltMinusEven: t = Tail::kAllMinus; break;
  }
  return BSeries(std::move(c), t);
}

Polynomial BSeries::finite_part() const { return Polynomial(finite_coefficients(*this)); }

int estimate_zero_order(std::span<const double> taylor, std::span<const double> scale, double order_tol) {
  const std::size_t n = std::min(taylor.size(), scale.size());
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs(taylor[j]) > order_tol * std::max(1.0, scale[j])) return static_cast<int>(j);
  }
  return n > 1 ? static_cast<int>(n - 1) : 1;
}

namespace {

struct Analytic {
  std::function<double(double)> value;
  std::function<std::vector<double>(double, int)> taylor;
  std::function<std::vector<double>(double, int)> scale;
};

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Bisects a sign change of g on [lo, hi]; returns the final bracket.
std::pair<double, double> bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  int slo = sign_of(g(lo));
  const double eff_tol = std::max(tol, 8.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(std::abs(lo), std::abs(hi)));
  while (hi - lo > eff_tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const int s = sign_of(g(mid));
    if (s == 0) return {mid - 0.5 * eff_tol, mid + 0.5 * eff_tol};
    if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

std::vector<double> grid_points(const ZeroSearchOptions& o) {
  if (!(o.lo < o.hi) || !(o.grid > 0)) throw Error(ErrorCode::kPrecondition, "zero search needs lo < hi and grid > 0");
  const auto steps = static_cast<std::size_t>(std::ceil((o.hi - o.lo) / o.grid));
  std::vector<double> xs(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) xs[k] = std::min(o.lo + static_cast<double>(k) * o.grid, o.hi);
  return xs;
}

// Intervals [x_k, x_{k+1}] over which g changes sign. An exact zero at a grid
// point is widened to its neighbours.
std::vector<std::pair<double, double>> sign_brackets(const std::vector<double>& xs,
                                                     const std::vector<double>& vals, bool want_change) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const int a = sign_of(vals[k]);
    const int b = sign_of(vals[k + 1]);
    if (a * b < 0 && want_change) out.emplace_back(xs[k], xs[k + 1]);
    if (b == 0 && k + 2 < xs.size()) {
      const int c = sign_of(vals[k + 2]);
      if ((a * c < 0) == want_change && a != 0 && c != 0) out.emplace_back(xs[k], xs[k + 2]);
    }
  }
  return out;
}

ZeroReport make_report(const Analytic& f, double lo, double hi, bool sign_change, const ZeroSearchOptions& o) {
  ZeroReport r;
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  r.location = lo + 0.5 * (hi - lo);
  r.sign_lo = sign_of(f.value(lo));
  r.sign_hi = sign_of(f.value(hi));
  r.residual = std::abs(f.value(r.location));
  r.is_sign_change = sign_change;
  const auto t = f.taylor(r.location, o.max_order);
  const auto s = f.scale(r.location, o.max_order);
  int order = estimate_zero_order(t, s, o.order_tol);
  // Parity follows the observed sign behaviour.
  if (sign_change && order % 2 == 0) ++order;
  if (!sign_change && order % 2 == 1) ++order;
  r.order_estimate = order;
  return r;
}

std::vector<ZeroReport> find_zeros(const Analytic& f, const ZeroSearchOptions& o) {
  const auto xs = grid_points(o);
  std::vector<double> vals(xs.size()), dvals(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const auto t = f.taylor(xs[k], 1);
    vals[k] = t[0];
    dvals[k] = t[1];
  }
  std::vector<ZeroReport> out;
  for (auto [lo, hi] : sign_brackets(xs, vals, true)) {
    auto br = bisect(f.value, lo, hi, o.tol);
    out.push_back(make_report(f, br.first, br.second, true, o));
  }
  // Even-order zeros: critical points where |f| is negligible.
  const auto derivative = [&f](double x) { return f.taylor(x, 1)[1]; };
  std::vector<ZeroReport> even;
  for (auto [lo, hi] : sign_brackets(xs, dvals, true)) {
    auto br = bisect(derivative, lo, hi, o.tol);
    const double c = br.first + 0.5 * (br.second - br.first);
    if (std::abs(f.value(c)) >= o.residual_tol) continue;
    const bool near_known = std::any_of(out.begin(), out.end(), [&](const ZeroReport& z) {
      return std::abs(z.location - c) <= 2.0 * o.grid;
    });
    if (near_known) continue;
    even.push_back(make_report(f, br.first, br.second, false, o));
  }
  out.insert(out.end(), even.begin(), even.end());
  std::sort(out.begin(), out.end(), [](const ZeroReport& a, const ZeroReport& b) { return a.location < b.location; });
  return out;
}

Analytic analytic(const BSeries& f, std::size_t n) {
  return {[&f, n](double x) { return f.eval(x, n); },
          [&f, n](double x, int order) { return f.taylor(x, order, n); },
          [&f, n](double x, int order) { return f.taylor_scale(x, order, n); }};
}

}  // namespace

std::vector<ZeroReport> find_real_zeros(const BSeries& f, std::size_t n, const ZeroSearchOptions& options) {
  auto out = find_zeros(analytic(f, n), options);
  // 1 <= |x| / (1 - |x|) at any zero; bisection can land a rounding error inside.
  for (auto& z : out) {
    if (std::abs(z.location) < 0.5) z.location = std::copysign(0.5, z.location);
  }
  return out;
}

std::vector<ZeroReport> find_real_zeros(const Polynomial& p, const ZeroSearchOptions& options) {
  Analytic a{[&p](double x) { return p(x); },
             [&p](double x, int order) { return p.taylor(x, order); },
             [&p](double x, int order) { return p.taylor_scale(x, order); }};
  return find_zeros(a, options);
}

std::string_view to_string(PropertyUVerdict verdict) {
  switch (verdict) {
    case PropertyUVerdict::kHoldsUpToNMax: return "holds_up_to_n_max";
    case PropertyUVerdict::kFailsWithWitness: return "fails_with_witness";
    case PropertyUVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Zeros and extra critical points of f_n in (zero - eps, zero + eps).
PropertyUWitness inspect_ball(const BSeries& f, std::size_t n, double zero, double eps) {
  ZeroSearchOptions o;
  o.lo = zero - eps;
  o.hi = zero + eps;
  o.grid = eps / 64.0;
  PropertyUWitness w;
  w.eps = eps;
  w.n = n;
  w.zeros = find_real_zeros(f, n, o);
  const auto derivative = [&f, n](double x) { return f.taylor(x, 1, n)[1]; };
  const auto xs = grid_points(o);
  std::vector<double> d(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) d[k] = derivative(xs[k]);
  for (auto [lo, hi] : sign_brackets(xs, d, true)) {
    auto br = bisect(derivative, lo, hi, o.tol);
    const double c = br.first + 0.5 * (br.second - br.first);
    const bool at_zero = std::any_of(w.zeros.begin(), w.zeros.end(), [&](const ZeroReport& z) {
      return !z.is_sign_change && std::abs(z.location - c) <= o.grid;
    });
    if (!at_zero) w.critical_points.push_back(c);
  }
  return w;
}

}  // namespace

PropertyUResult property_u_probe(const BSeries& f, double zero, const PropertyUOptions& options) {
  if (!(std::abs(zero) < 1.0) || !(std::abs(f.eval(zero)) <= options.zero_tol)) {
    throw Error(ErrorCode::kPrecondition, "property U probe needs a verified zero of the series");
  }
  PropertyUResult result;
  if (options.n_max == 0 || options.eps_schedule.empty()) return result;
  std::optional<PropertyUWitness> last_bad_smallest;
  for (std::size_t e = 0; e < options.eps_schedule.size(); ++e) {
    const double eps = options.eps_schedule[e];
    std::size_t threshold = 0;
    std::optional<PropertyUWitness> last_bad;
    for (std::size_t n = 0; n <= options.n_max; ++n) {
      auto w = inspect_ball(f, n, zero, eps);
      const bool good = w.zeros.size() == 1 && w.critical_points.empty();
      if (!good) {
        threshold = n + 1;
        last_bad = std::move(w);
      }
    }
    result.thresholds.push_back(threshold);
    if (e + 1 == options.eps_schedule.size()) last_bad_smallest = std::move(last_bad);
  }
  const std::size_t final_threshold = result.thresholds.back();
  if (final_threshold <= options.n_max / 2) {
    result.verdict = PropertyUVerdict::kHoldsUpToNMax;
  } else if (last_bad_smallest && last_bad_smallest->n > options.n_max / 2) {
    result.verdict = PropertyUVerdict::kFailsWithWitness;
    result.witness = std::move(last_bad_smallest);
  }
  return result;
}

double root_product_bound(int n) {
  if (n < 1) throw Error(ErrorCode::kDomain, "root product bound needs n >= 1");
  const double dn = n;
  return std::pow(1.0 + 1.0 / dn, -dn / 2.0) / std::sqrt(1.0 + dn);
}

double root_product_bound_root(int n) { return std::pow(root_product_bound(n), 1.0 / n); }

std::string_view to_string(RegionClass region) {
  switch (region) {
    case RegionClass::kTrivialN: return "trivial_N";
    case RegionClass::kNontrivial: return "nontrivial";
    case RegionClass::kOutOfDomain: return "out_of_domain";
  }
  return "out_of_domain";
}

RegionClass trivial_region_test(double gamma, double lambda) {
  if (!(std::abs(gamma) < 1.0) || !(std::abs(lambda) < 1.0)) return RegionClass::kOutOfDomain;
  return std::abs(gamma * lambda) >= 0.5 ? RegionClass::kTrivialN : RegionClass::kNontrivial;
}

BSeries antidiagonal_reduce(const BSeries& f) {
  const std::size_t k = f.coeffs().size();
  std::vector<int> g((k + 1) / 2);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = f.coefficient(2 * i);
  // Even-indexed tail entries are constant for every tail template.
  Tail t = Tail::kZero;
  switch (f.tail()) {
    case Tail::kZero: break;
    case Tail::kAllPlus:
    case Tail::kAltPlusEven: t = Tail::kAllPlus; break;
    case Tail::kAllMinus:
    case Tail::kAltMinusEven: t = Tail::kAllMinus; break;
  }
  return BSeries(std::move(g), t);
}

std::vector<int> tail_polynomial(Tail tail, std::span<const int> p) {
  if (p.empty() || p[0] != 1) throw Error(ErrorCode::kNormalization, "finite part must start with 1");
  for (int c : p) {
    if (c < -1 || c > 1) throw Error(ErrorCode::kNormalization, "finite part coefficient not in {-1,0,1}");
  }
  if (tail == Tail::kZero) return {p.begin(), p.end()};
  const std::size_t m = p.size() - 1;
  const int shift = (tail == Tail::kAllPlus || tail == Tail::kAllMinus) ? -1 : 1;  // (1 + shift x)
  const int parity = (m + 1) % 2 == 0 ? 1 : -1;
  int lead = 0;
  switch (tail) {
    case Tail::kZero: break;
    case Tail::kAllPlus: lead = 1; break;
    case Tail::kAllMinus: lead = -1; break;
    case Tail::kAltPlusEven: lead = parity; break;
    case Tail::kAltMinusEven: lead = -parity; break;
  }
  std::vector<int> out(m + 2, 0);
  for (std::size_t i = 0; i <= m; ++i) {
    out[i] += p[i];
    out[i + 1] += shift * p[i];
  }
  out[m + 1] += lead;
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::vector<int> tail_polynomial(const BSeries& f) {
  std::vector<int> p(f.coeffs().begin(), f.coeffs().end());
  return tail_polynomial(f.tail(), p);
}

}  // namespace locuslab
