#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  // Coefficients 1, a_1..a_deg with a_i uniform in {-1, 0, 1}.
  std::vector<int> series_coeffs(int deg) {
    std::vector<int> c(static_cast<std::size_t>(deg) + 1);
    c[0] = 1;
    for (int i = 1; i <= deg; ++i) c[static_cast<std::size_t>(i)] = integer(-1, 1);
    return c;
  }

  std::string word(int len, char a = 'p', char b = 'm') {
    std::string w;
    for (int i = 0; i < len; ++i) w += coin() ? a : b;
    return w;
  }

  // (gamma, lambda) with both magnitudes in [lo, hi) and random signs.
  std::pair<double, double> params(double lo, double hi) {
    double g = uniform(lo, hi), l = uniform(lo, hi);
    if (coin()) g = -g;
    if (coin()) l = -l;
    return {g, l};
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
