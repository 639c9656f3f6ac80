#pragma once

// Brute-force reference computations. They share no code with the library:
// sums are taken term by term with std::pow, searches are exhaustive.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace oracle {

struct Pt {
  double x, y;
};

// pi of the word with coefficients c (c_i in {-1, +1}), repeating `period`
// after the prefix, summed over `terms` terms.
inline Pt address(const std::vector<int>& prefix, const std::vector<int>& period, double g, double l,
                  int terms = 4000) {
  Pt s{0, 0};
  for (int i = 0; i < terms; ++i) {
    int c;
    if (i < static_cast<int>(prefix.size())) {
      c = prefix[static_cast<std::size_t>(i)];
    } else if (period.empty()) {
      break;
    } else {
      c = period[static_cast<std::size_t>(i - static_cast<int>(prefix.size())) % period.size()];
    }
    s.x += c * std::pow(g, i);
    s.y += c * std::pow(l, i);
  }
  return s;
}

// Coefficient letters from a string over {p, m}.
inline std::vector<int> letters(const std::string& w) {
  std::vector<int> out;
  for (char ch : w) out.push_back(ch == 'p' ? 1 : -1);
  return out;
}

// sum_{i<terms} a_i x^i with a_i from coeffs then the repeating tail pattern.
inline double series(const std::vector<int>& coeffs, const std::vector<int>& tail, double x, int terms = 20000) {
  double s = 0;
  double xp = 1;
  for (int i = 0; i < terms; ++i) {
    int a = 0;
    if (i < static_cast<int>(coeffs.size())) {
      a = coeffs[static_cast<std::size_t>(i)];
    } else if (!tail.empty()) {
      a = tail[static_cast<std::size_t>(i) % tail.size()];
    } else {
      break;
    }
    s += a * xp;
    xp *= x;
    if (std::abs(xp) < 1e-20) break;
  }
  return s;
}

// Tail patterns indexed by absolute index parity.
inline std::vector<int> tail_pattern(int id) {
  switch (id) {
    case 1: return {1};
    case 2: return {-1};
    case 3: return {1, -1};
    case 4: return {-1, 1};
    default: return {};
  }
}

inline double poly(const std::vector<double>& c, double x) {
  double s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * std::pow(x, static_cast<double>(i));
  return s;
}

inline std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
  if (d.empty()) d.push_back(0);
  return d;
}

// Real zeros of multiplicity >= 2 of c in [lo, hi]: a zero of multiplicity k
// is a sign change of the (k-1)-th derivative at which all lower derivatives
// vanish. Sign changes are located on a grid of step h.
inline std::vector<double> multiple_real_zeros(const std::vector<double>& c, double lo, double hi, double h = 1e-4,
                                               double tol = 1e-9, int max_k = 6) {
  std::vector<std::vector<double>> ders{c};
  for (int k = 1; k < max_k; ++k) ders.push_back(derivative(ders.back()));
  std::vector<double> out;
  for (int k = 2; k <= max_k; ++k) {
    const auto& d = ders[static_cast<std::size_t>(k - 1)];
    double a = lo, fa = poly(d, a);
    for (double b = lo + h; b <= hi + 0.5 * h; b += h) {
      const double fb = poly(d, b);
      if ((fa < 0) != (fb < 0) || fb == 0) {
        double x0 = a, x1 = b, f0 = fa;
        for (int it = 0; it < 80; ++it) {
          const double mid = 0.5 * (x0 + x1);
          const double fm = poly(d, mid);
          if ((fm < 0) == (f0 < 0) && fm != 0) {
            x0 = mid;
            f0 = fm;
          } else {
            x1 = mid;
          }
        }
        const double z = 0.5 * (x0 + x1);
        bool all = true;
        for (int j = 0; j < k - 1 && all; ++j) {
          double scale = 0;
          for (std::size_t i = 0; i < ders[static_cast<std::size_t>(j)].size(); ++i) {
            scale += std::abs(ders[static_cast<std::size_t>(j)][i]);
          }
          all = std::abs(poly(ders[static_cast<std::size_t>(j)], z)) <= tol * std::max(1.0, scale);
        }
        if (all) out.push_back(z);
      }
      a = b;
      fa = fb;
    }
  }
  return out;
}

// Sign-change zeros of g on [lo, hi] at grid h, bisected.
inline std::vector<double> sign_changes(const std::function<double(double)>& g, double lo, double hi, double h) {
  std::vector<double> out;
  double a = lo, fa = g(a);
  for (double b = lo + h; b <= hi + 1e-15; b += h) {
    const double fb = g(b);
    if (fa != 0 && fb != 0 && (fa < 0) != (fb < 0)) {
      double x0 = a, x1 = b, f0 = fa;
      for (int it = 0; it < 200 && x1 - x0 > 1e-16; ++it) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = g(mid);
        if (fm == 0) {
          x0 = x1 = mid;
          break;
        }
        if ((fm < 0) == (f0 < 0)) {
          x0 = mid;
          f0 = fm;
        } else {
          x1 = mid;
        }
      }
      out.push_back(0.5 * (x0 + x1));
    }
    a = b;
    fa = fb;
  }
  return out;
}

// Exhaustive prefix search for the residue recurrence: does some coefficient
// prefix a_1..a_n keep |f_k(x) / x^k| within |x| / (1 - |x|) for every k <= n
// in both coordinates? Residues are recomputed from scratch for each prefix.
inline bool some_prefix_survives(double g, double l, int n) {
  const double bg = std::abs(g) / (1 - std::abs(g));
  const double bl = std::abs(l) / (1 - std::abs(l));
  auto fits = [&](const std::vector<int>& a) {
    double fg = 0, fl = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      fg += a[i] * std::pow(g, static_cast<double>(i));
      fl += a[i] * std::pow(l, static_cast<double>(i));
    }
    const double k = static_cast<double>(a.size() - 1);
    return std::abs(fg / std::pow(g, k)) <= bg && std::abs(fl / std::pow(l, k)) <= bl;
  };
  std::vector<int> a{1};
  if (!fits(a)) return false;
  // Depth-first over all 3^n prefixes, cutting only prefixes that already failed.
  std::function<bool()> rec = [&]() -> bool {
    if (static_cast<int>(a.size()) == n + 1) return true;
    for (int b = -1; b <= 1; ++b) {
      a.push_back(b);
      if (fits(a) && rec()) return true;
      a.pop_back();
    }
    return false;
  };
  return rec();
}

// All complex roots of c by Durand-Kerner iteration.
inline std::vector<std::complex<double>> roots_durand_kerner(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  const std::size_t n = c.size() - 1;
  std::vector<std::complex<double>> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::polar(1.0, 0.4 + 2 * M_PI * static_cast<double>(i) / n) * 0.9;
  auto p = [&](std::complex<double> x) {
    std::complex<double> s = 0;
    for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
    return s / c.back();
  };
  for (int it = 0; it < 2000; ++it) {
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> den = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      const auto dz = p(z[i]) / den;
      z[i] -= dz;
      change = std::max(change, std::abs(dz));
    }
    if (change < 1e-15) break;
  }
  return z;
}

}  // namespace oracle
