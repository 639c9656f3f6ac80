#pragma once

// Parameters, symbolic words and the address map for the pair of plane maps
//
//   p(x) = T x + (1,1),   m(x) = T x - (1,1),   T = diag(gamma, lambda).
//
// Addresses sum from index 0: pi(w) = sum_{i>=0} w_i T^i (1,1), so pi(p^inf)
// is the fixed point of p.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace locuslab {

class BSeries;

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  friend PlanePoint operator+(PlanePoint a, PlanePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend PlanePoint operator-(PlanePoint a, PlanePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend PlanePoint operator-(PlanePoint a) { return {-a.x, -a.y}; }
  friend PlanePoint operator*(double s, PlanePoint a) { return {s * a.x, s * a.y}; }
  friend bool operator==(PlanePoint, PlanePoint) = default;
};

double norm(PlanePoint p);
double distance(PlanePoint a, PlanePoint b);

class Params {
 public:
  // Throws Error(kDomain) unless |gamma| < 1 and |lambda| < 1.
  Params(double gamma, double lambda);

  double gamma() const noexcept { return gamma_; }
  double lambda() const noexcept { return lambda_; }
  // max(|gamma|, |lambda|); the contraction ratio of both maps.
  double contraction() const noexcept;
  bool on_diagonal() const noexcept { return gamma_ == lambda_; }

  // Applies T = diag(gamma, lambda).
  PlanePoint apply(PlanePoint v) const noexcept { return {gamma_ * v.x, lambda_ * v.y}; }
  PlanePoint power_diag(int n) const;

  // Parses "gamma,lambda".
  static Params parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Params&, const Params&) = default;

 private:
  double gamma_;
  double lambda_;
};

enum class Letter : std::int8_t { kMinus = -1, kPlus = 1 };

constexpr int coefficient(Letter a) { return static_cast<int>(a); }
constexpr Letter flipped(Letter a) { return a == Letter::kPlus ? Letter::kMinus : Letter::kPlus; }

// A finite word, or the eventually periodic word preperiod . period^inf.
// Stored in canonical form: the period is primitive and the preperiod is as
// short as possible, so structural equality is word equality.
class SignedWord {
 public:
  SignedWord() = default;
  explicit SignedWord(std::vector<Letter> preperiod, std::vector<Letter> period = {});

  static SignedWord parse(std::string_view text);
  static SignedWord constant(Letter a) { return SignedWord({}, {a}); }

  const std::vector<Letter>& preperiod() const noexcept { return preperiod_; }
  const std::vector<Letter>& period() const noexcept { return period_; }
  bool is_finite() const noexcept { return period_.empty(); }
  bool empty() const noexcept { return preperiod_.empty() && period_.empty(); }
  // Length of a finite word; throws for infinite words.
  std::size_t length() const;

  Letter at(std::size_t i) const;
  // First n letters as a finite word (n <= length() for finite words).
  SignedWord prefix(std::size_t n) const;
  SignedWord prepended(Letter a) const;
  SignedWord negated() const;
  // Concatenation; `head` must be finite.
  friend SignedWord concat(const SignedWord& head, const SignedWord& tail);

  std::string to_string() const;

  friend bool operator==(const SignedWord&, const SignedWord&) = default;

 private:
  void canonicalize();

  std::vector<Letter> preperiod_;
  std::vector<Letter> period_;
};

// pi(w). Eventually periodic words are summed in closed form. A finite word is
// read as a truncation of an infinite word; its partial sum is returned and
// `depth` must be at least its length.
PlanePoint eval_address(const SignedWord& w, const Params& params, int depth);

// s_u = sum_{i<|u|} u_i T^i (1,1), so that uA = T^{|u|} A + s_u.
PlanePoint cylinder_offset(const SignedWord& u, const Params& params);

// w = T^{-m} (s_u - s_v) for words of equal length m with different first letters.
PlanePoint normalized_translation(const SignedWord& u, const SignedWord& v, const Params& params);

// Per-coordinate half-extent of the attractor: (1/(1-|gamma|), 1/(1-|lambda|)).
PlanePoint attractor_half_extent(const Params& params);

// Euclidean bound on |a - s_u| for a in the cylinder uA, |u| = depth.
double truncation_radius(const Params& params, int depth);

struct AttractorSample {
  // points[k] = s_u where bit i of k selects u_i (set = p).
  std::vector<PlanePoint> points;
  int depth = 0;
  // Every attractor point lies within this distance of some sample point.
  double hausdorff_bound = 0.0;
};

inline constexpr int kDefaultMaxSampleDepth = 20;

AttractorSample attractor_sample(const Params& params, int depth,
                                 int max_depth = kDefaultMaxSampleDepth);

struct CylinderGap {
  // Certified lower bound for d(pA, mA) (clamped at 0).
  double lower = 0.0;
  // Distance between two genuine attractor points of pA and mA, hence an
  // upper bound; equal to the minimum distance between depth-`depth` samples
  // unless the search frontier was capped.
  double upper = 0.0;
  int depth = 0;
  std::size_t nodes = 0;
  bool capped = false;
};

inline constexpr std::size_t kDefaultGapFrontier = std::size_t{1} << 16;

CylinderGap cylinder_gap(const Params& params, int depth,
                         std::size_t max_frontier = kDefaultGapFrontier);

// Words u, v with u_i - v_i = 2 f_i; u starts with p and v with m.
std::pair<SignedWord, SignedWord> words_from_series(const BSeries& f);

}  // namespace locuslab
