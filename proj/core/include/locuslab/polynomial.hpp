#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace locuslab {

// Real polynomial with coefficients in increasing degree order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  static Polynomial from_integers(std::span<const int> coeffs);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  // Degree after dropping zero leading coefficients; -1 for the zero polynomial.
  int degree() const noexcept;

  double operator()(double x) const noexcept;
  std::complex<double> operator()(std::complex<double> z) const noexcept;
  Polynomial derivative() const;
  // Taylor coefficients t_0..t_order at x0: p(x0 + h) = sum t_j h^j.
  std::vector<double> taylor(double x0, int order) const;
  // Same for the polynomial with |coefficients|, evaluated at |x0|; a magnitude
  // scale for the coefficients above.
  std::vector<double> taylor_scale(double x0, int order) const;

  std::string to_string() const;

 private:
  std::vector<double> coeffs_;
};

// Taylor coefficients of sum_i c_i x^i at x0 (c in increasing degree order).
void taylor_coefficients(std::span<const double> c, double x0, std::span<double> out);

// All complex roots via the eigenvalues of the companion matrix. Leading
// zero coefficients are ignored.
std::vector<std::complex<double>> complex_roots(std::span<const double> coeffs);

// Exact test over Z/pZ (p = 2^31 - 1) for a repeated factor: returns the
// degree of gcd(P, P') mod p. For integer P whose leading coefficient is not
// divisible by p this is an upper bound on the degree of gcd(P, P') over Q,
// so 0 certifies that P is squarefree.
int repeated_factor_degree_mod_p(std::span<const int> coeffs);

// Degree of gcd(P, Q) mod p, same caveats.
int common_factor_degree_mod_p(std::span<const int> p, std::span<const int> q);

}  // namespace locuslab
