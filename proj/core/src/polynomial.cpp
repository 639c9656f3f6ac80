#include "locuslab/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

namespace locuslab {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

Polynomial Polynomial::from_integers(std::span<const int> coeffs) {
  return Polynomial(std::vector<double>(coeffs.begin(), coeffs.end()));
}

int Polynomial::degree() const noexcept {
  int d = static_cast<int>(coeffs_.size()) - 1;
  while (d >= 0 && coeffs_[static_cast<std::size_t>(d)] == 0.0) --d;
  return d;
}

double Polynomial::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const noexcept {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

void taylor_coefficients(std::span<const double> c, double x0, std::span<double> out) {
  // Repeated synthetic division by (x - x0); the j-th remainder is t_j.
  std::fill(out.begin(), out.end(), 0.0);
  if (c.empty()) return;
  std::vector<double> work(c.begin(), c.end());
  const std::size_t n = work.size();
  for (std::size_t j = 0; j < out.size() && j < n; ++j) {
    // Horner pass over work[j..n-1] leaves the remainder in work[j].
    for (std::size_t i = n - 1; i > j; --i) work[i - 1] += x0 * work[i];
    out[j] = work[j];
  }
}

std::vector<double> Polynomial::taylor(double x0, int order) const {
  std::vector<double> out(static_cast<std::size_t>(order) + 1);
  taylor_coefficients(coeffs_, x0, out);
  return out;
}

std::vector<double> Polynomial::taylor_scale(double x0, int order) const {
  std::vector<double> abs_coeffs(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), abs_coeffs.begin(), [](double v) { return std::abs(v); });
  std::vector<double> out(static_cast<std::size_t>(order) + 1);
  taylor_coefficients(abs_coeffs, std::abs(x0), out);
  return out;
}

std::string Polynomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0.0) continue;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%g", out.empty() ? "" : (coeffs_[i] < 0 ? " - " : " + "),
                  out.empty() ? coeffs_[i] : std::abs(coeffs_[i]));
    out += buf;
    if (i == 1) out += " x";
    if (i > 1) out += " x^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::vector<std::complex<double>> complex_roots(std::span<const double> coeffs) {
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d >= 0 && coeffs[static_cast<std::size_t>(d)] == 0.0) --d;
  if (d <= 0) return {};
  // Zero roots are split off so the companion matrix stays well conditioned.
  int low = 0;
  while (coeffs[static_cast<std::size_t>(low)] == 0.0) ++low;
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(low), 0.0);
  const int n = d - low;
  if (n == 0) return roots;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  const double lead = coeffs[static_cast<std::size_t>(d)];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(low + i)] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  const auto& ev = solver.eigenvalues();
  for (int i = 0; i < n; ++i) roots.push_back(ev[i]);
  return roots;
}

namespace {

constexpr std::int64_t kPrime = 2147483647;  // 2^31 - 1

std::int64_t mod(std::int64_t a) {
  a %= kPrime;
  return a < 0 ? a + kPrime : a;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  b = mod(b);
  while (e > 0) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

std::int64_t mod_inverse(std::int64_t a) { return mod_pow(a, kPrime - 2); }

void trim(std::vector<std::int64_t>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Degree of gcd over Z/pZ; inputs reduced and trimmed.
int gcd_degree(std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
  trim(a);
  trim(b);
  if (a.empty() && b.empty()) return -1;
  while (!b.empty()) {
    // a <- a mod b
    const std::int64_t inv = mod_inverse(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      const std::int64_t factor = a.back() * inv % kPrime;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = mod(a[shift + i] - factor * b[i] % kPrime);
      }
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

std::vector<std::int64_t> reduce(std::span<const int> p) {
  std::vector<std::int64_t> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = mod(p[i]);
  return out;
}

}  // namespace

int repeated_factor_degree_mod_p(std::span<const int> coeffs) {
  std::vector<std::int64_t> p = reduce(coeffs);
  trim(p);
  if (p.size() <= 1) return 0;
  std::vector<std::int64_t> dp(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) dp[i - 1] = mod(static_cast<std::int64_t>(i) * p[i]);
  return std::max(0, gcd_degree(std::move(p), std::move(dp)));
}

int common_factor_degree_mod_p(std::span<const int> p, std::span<const int> q) {
  return std::max(0, gcd_degree(reduce(p), reduce(q)));
}

}  // namespace locuslab
