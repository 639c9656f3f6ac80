#include "locuslab/core_ifs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_set>

#include "locuslab/bseries.hpp"
#include "locuslab/error.hpp"

namespace locuslab {

double norm(PlanePoint p) { return std::hypot(p.x, p.y); }
double distance(PlanePoint a, PlanePoint b) { return norm(a - b); }

Params::Params(double gamma, double lambda) : gamma_(gamma), lambda_(lambda) {
  if (!(std::abs(gamma) < 1.0) || !(std::abs(lambda) < 1.0)) {
    throw Error(ErrorCode::kDomain, "parameters must satisfy |gamma| < 1 and |lambda| < 1, got " +
                                        to_string());
  }
}

double Params::contraction() const noexcept { return std::max(std::abs(gamma_), std::abs(lambda_)); }

PlanePoint Params::power_diag(int n) const { return {std::pow(gamma_, n), std::pow(lambda_, n)}; }

namespace {

double parse_double(std::string_view text) {
  // from_chars for double is not available everywhere; strtod on a copy.
  std::string copy(text);
  while (!copy.empty() && std::isspace(static_cast<unsigned char>(copy.front()))) copy.erase(copy.begin());
  while (!copy.empty() && std::isspace(static_cast<unsigned char>(copy.back()))) copy.pop_back();
  if (copy.empty()) throw Error(ErrorCode::kParse, "empty number");
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::kParse, "not a number: '" + copy + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Params Params::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw Error(ErrorCode::kParse, "expected \"gamma,lambda\", got '" + std::string(text) + "'");
  }
  return Params(parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1)));
}

std::string Params::to_string() const { return format_double(gamma_) + "," + format_double(lambda_); }

// ---------------------------------------------------------------------------
// SignedWord

SignedWord::SignedWord(std::vector<Letter> preperiod, std::vector<Letter> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  canonicalize();
}

void SignedWord::canonicalize() {
  if (period_.empty()) return;
  // Primitive period.
  const std::size_t n = period_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = period_[i] == period_[i - d];
    if (repeats) {
      period_.resize(d);
      break;
    }
  }
  // Shortest preperiod: absorb matching trailing letters into a rotated period.
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    preperiod_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

SignedWord SignedWord::parse(std::string_view text) {
  std::vector<Letter> pre;
  std::vector<Letter> per;
  bool in_period = false;
  bool closed = false;
  for (char c : text) {
    if (closed) throw Error(ErrorCode::kParse, "characters after period in word '" + std::string(text) + "'");
    switch (c) {
      case 'p':
      case 'm':
        (in_period ? per : pre).push_back(c == 'p' ? Letter::kPlus : Letter::kMinus);
        break;
      case '(':
        if (in_period) throw Error(ErrorCode::kParse, "nested period in '" + std::string(text) + "'");
        in_period = true;
        break;
      case ')':
        if (!in_period || per.empty()) {
          throw Error(ErrorCode::kParse, "empty or unopened period in '" + std::string(text) + "'");
        }
        in_period = false;
        closed = true;
        break;
      default:
        throw Error(ErrorCode::kParse, std::string("unexpected character '") + c + "' in word");
    }
  }
  if (in_period) throw Error(ErrorCode::kParse, "unterminated period in '" + std::string(text) + "'");
  if (pre.empty() && per.empty()) throw Error(ErrorCode::kInvalidWord, "empty word");
  return SignedWord(std::move(pre), std::move(per));
}

std::size_t SignedWord::length() const {
  if (!is_finite()) throw Error(ErrorCode::kInvalidWord, "infinite word has no length");
  return preperiod_.size();
}

Letter SignedWord::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  if (period_.empty()) throw Error(ErrorCode::kInvalidWord, "index past the end of a finite word");
  return period_[(i - preperiod_.size()) % period_.size()];
}

SignedWord SignedWord::prefix(std::size_t n) const {
  if (is_finite() && n > preperiod_.size()) {
    throw Error(ErrorCode::kInvalidWord, "prefix longer than the word");
  }
  std::vector<Letter> letters(n);
  for (std::size_t i = 0; i < n; ++i) letters[i] = at(i);
  return SignedWord(std::move(letters));
}

SignedWord SignedWord::prepended(Letter a) const {
  std::vector<Letter> pre;
  pre.reserve(preperiod_.size() + 1);
  pre.push_back(a);
  pre.insert(pre.end(), preperiod_.begin(), preperiod_.end());
  return SignedWord(std::move(pre), period_);
}

SignedWord SignedWord::negated() const {
  auto flip = [](std::vector<Letter> v) {
    for (auto& a : v) a = flipped(a);
    return v;
  };
  return SignedWord(flip(preperiod_), flip(period_));
}

SignedWord concat(const SignedWord& head, const SignedWord& tail) {
  if (!head.is_finite()) throw Error(ErrorCode::kInvalidWord, "cannot append to an infinite word");
  std::vector<Letter> pre = head.preperiod_;
  pre.insert(pre.end(), tail.preperiod_.begin(), tail.preperiod_.end());
  return SignedWord(std::move(pre), tail.period_);
}

std::string SignedWord::to_string() const {
  std::string out;
  for (Letter a : preperiod_) out.push_back(a == Letter::kPlus ? 'p' : 'm');
  if (!period_.empty()) {
    out.push_back('(');
    for (Letter a : period_) out.push_back(a == Letter::kPlus ? 'p' : 'm');
    out.push_back(')');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Address map

namespace {

// sum_{i<n} letters[i] x^i by Horner.
double letter_sum(std::span<const Letter> letters, double x) {
  double acc = 0.0;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) acc = acc * x + coefficient(*it);
  return acc;
}

double address_coordinate(const SignedWord& w, double x) {
  const double head = letter_sum(w.preperiod(), x);
  if (w.is_finite()) return head;
  const auto& per = w.period();
  const double cycle = letter_sum(per, x) / (1.0 - std::pow(x, static_cast<double>(per.size())));
  return head + std::pow(x, static_cast<double>(w.preperiod().size())) * cycle;
}

}  // namespace

PlanePoint eval_address(const SignedWord& w, const Params& params, int depth) {
  if (w.empty()) throw Error(ErrorCode::kInvalidWord, "empty word");
  if (depth < 1) throw Error(ErrorCode::kPrecondition, "depth must be positive");
  if (w.is_finite() && static_cast<std::size_t>(depth) < w.length()) {
    throw Error(ErrorCode::kPrecondition, "depth shorter than the finite word");
  }
  return {address_coordinate(w, params.gamma()), address_coordinate(w, params.lambda())};
}

PlanePoint cylinder_offset(const SignedWord& u, const Params& params) {
  if (!u.is_finite()) throw Error(ErrorCode::kInvalidWord, "cylinder offset needs a finite word");
  if (u.empty()) throw Error(ErrorCode::kInvalidWord, "empty word");
  return {letter_sum(u.preperiod(), params.gamma()), letter_sum(u.preperiod(), params.lambda())};
}

PlanePoint normalized_translation(const SignedWord& u, const SignedWord& v, const Params& params) {
  if (!u.is_finite() || !v.is_finite() || u.empty() || v.empty()) {
    throw Error(ErrorCode::kInvalidWord, "normalized translation needs nonempty finite words");
  }
  if (u.length() != v.length()) {
    throw Error(ErrorCode::kLengthMismatch, "words " + u.to_string() + " and " + v.to_string() +
                                                " differ in length");
  }
  if (u.at(0) == v.at(0)) {
    throw Error(ErrorCode::kSharedPrefix, "words " + u.to_string() + " and " + v.to_string() +
                                              " share a common prefix");
  }
  if (params.gamma() == 0.0 || params.lambda() == 0.0) {
    throw Error(ErrorCode::kDomain, "T is singular");
  }
  const int m = static_cast<int>(u.length());
  // Difference of the two partial sums letter by letter keeps cancellation exact
  // in the common letters.
  std::vector<int> diff(u.length());
  for (std::size_t i = 0; i < u.length(); ++i) diff[i] = coefficient(u.at(i)) - coefficient(v.at(i));
  auto coord = [&](double x) {
    double acc = 0.0;
    for (auto it = diff.rbegin(); it != diff.rend(); ++it) acc = acc * x + *it;
    return acc / std::pow(x, m);
  };
  return {coord(params.gamma()), coord(params.lambda())};
}

PlanePoint attractor_half_extent(const Params& params) {
  return {1.0 / (1.0 - std::abs(params.gamma())), 1.0 / (1.0 - std::abs(params.lambda()))};
}

double truncation_radius(const Params& params, int depth) {
  const double g = std::abs(params.gamma());
  const double l = std::abs(params.lambda());
  return std::hypot(std::pow(g, depth) / (1.0 - g), std::pow(l, depth) / (1.0 - l));
}

AttractorSample attractor_sample(const Params& params, int depth, int max_depth) {
  if (depth < 1) throw Error(ErrorCode::kPrecondition, "sample depth must be positive");
  if (depth > max_depth) {
    throw Error(ErrorCode::kResourceLimit, "sample depth " + std::to_string(depth) +
                                               " exceeds the configured maximum " +
                                               std::to_string(max_depth));
  }
  AttractorSample out;
  out.depth = depth;
  out.points.reserve(std::size_t{1} << depth);
  out.points.push_back({0.0, 0.0});
  PlanePoint step{1.0, 1.0};
  for (int i = 0; i < depth; ++i) {
    const std::size_t half = out.points.size();
    out.points.resize(2 * half);
    for (std::size_t k = 0; k < half; ++k) {
      const PlanePoint base = out.points[k];
      out.points[k] = base - step;
      out.points[k + half] = base + step;
    }
    step = params.apply(step);
  }
  // Step i writes letter i into bit i of the index.
  out.hausdorff_bound = truncation_radius(params, depth);
  return out;
}

// ---------------------------------------------------------------------------
// Cylinder gap: branch and bound over differences s_u - s_v of same-length
// words with u_0 = p, v_0 = m. Children of a difference at level k are the
// difference itself (equal letters) and difference +/- 2 T^k (1,1).

CylinderGap cylinder_gap(const Params& params, int depth, std::size_t max_frontier) {
  if (depth < 1) throw Error(ErrorCode::kPrecondition, "gap depth must be positive");
  const double g = params.gamma();
  const double l = params.lambda();
  const double ag = std::abs(g);
  const double al = std::abs(l);

  struct Node {
    double dx;
    double dy;
  };
  CylinderGap out;
  out.depth = depth;

  // Half-widths of the box containing all differences reachable below level k,
  // for depth-limited samples (sample) and for the true attractor (limit).
  auto sample_halfwidth = [&](double a, int k) {
    // 2 sum_{k<=i<depth} |x|^i
    return 2.0 * (std::pow(a, k) - std::pow(a, depth)) / (1.0 - a);
  };
  auto limit_halfwidth = [&](double a, int k) { return 2.0 * std::pow(a, k) / (1.0 - a); };
  auto box_distance = [](Node n, double hx, double hy) {
    const double ex = std::max(0.0, std::abs(n.dx) - hx * (1.0 + 1e-12));
    const double ey = std::max(0.0, std::abs(n.dy) - hy * (1.0 + 1e-12));
    return std::hypot(ex, ey);
  };

  std::vector<Node> frontier{{2.0, 2.0}};
  double best_upper = std::hypot(2.0, 2.0);
  double dropped_lower = std::numeric_limits<double>::infinity();
  double pg = g;  // gamma^k at level k = 1
  double pl = l;

  struct Keyed {
    double lb;
    Node node;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const noexcept {
      return std::hash<std::int64_t>{}(k.first) * 0x9E3779B97F4A7C15ull ^ std::hash<std::int64_t>{}(k.second);
    }
  };
  std::vector<Keyed> next;
  std::unordered_set<std::pair<std::int64_t, std::int64_t>, KeyHash> seen;

  for (int k = 1; k < depth; ++k) {
    next.clear();
    seen.clear();
    const double hx = sample_halfwidth(ag, k + 1);
    const double hy = sample_halfwidth(al, k + 1);
    for (const Node& n : frontier) {
      for (int c = -1; c <= 1; ++c) {
        Node child{n.dx + 2.0 * c * pg, n.dy + 2.0 * c * pl};
        ++out.nodes;
        best_upper = std::min(best_upper, std::hypot(child.dx, child.dy));
        const double lb = box_distance(child, hx, hy);
        if (lb > best_upper) continue;
        // Quantized key to drop exact and near-exact duplicates.
        const double q = 1e-13;
        const std::pair<std::int64_t, std::int64_t> key{std::llround(child.dx / q), std::llround(child.dy / q)};
        if (!seen.insert(key).second) continue;
        next.push_back({lb, child});
      }
    }
    // Prune against the final upper bound of this level.
    std::erase_if(next, [&](const Keyed& e) { return e.lb > best_upper; });
    if (next.size() > max_frontier) {
      std::nth_element(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(max_frontier), next.end(),
                       [](const Keyed& a, const Keyed& b) { return a.lb < b.lb; });
      const double hxl = limit_halfwidth(ag, k + 1);
      const double hyl = limit_halfwidth(al, k + 1);
      for (auto it = next.begin() + static_cast<std::ptrdiff_t>(max_frontier); it != next.end(); ++it) {
        dropped_lower = std::min(dropped_lower, box_distance(it->node, hxl, hyl));
      }
      next.resize(max_frontier);
      out.capped = true;
    }
    frontier.clear();
    for (const auto& e : next) frontier.push_back(e.node);
    pg *= g;
    pl *= l;
  }

  double sample_min = std::numeric_limits<double>::infinity();
  for (const Node& n : frontier) sample_min = std::min(sample_min, std::hypot(n.dx, n.dy));
  if (frontier.empty()) sample_min = best_upper;
  out.upper = best_upper;
  const double frontier_lower = sample_min - 2.0 * truncation_radius(params, depth);
  out.lower = std::max(0.0, std::min(frontier_lower, dropped_lower));
  return out;
}

// ---------------------------------------------------------------------------

std::pair<SignedWord, SignedWord> words_from_series(const BSeries& f) {
  if (f.coeffs().empty() || f.coeffs()[0] != 1) {
    throw Error(ErrorCode::kNormalization, "series must have constant coefficient 1");
  }
  auto letters_for = [](int c) -> std::pair<Letter, Letter> {
    if (c > 0) return {Letter::kPlus, Letter::kMinus};
    if (c < 0) return {Letter::kMinus, Letter::kPlus};
    return {Letter::kPlus, Letter::kPlus};
  };
  std::vector<Letter> u_pre;
  std::vector<Letter> v_pre;
  for (auto c : f.coeffs()) {
    auto [a, b] = letters_for(c);
    u_pre.push_back(a);
    v_pre.push_back(b);
  }
  // The tail has period at most 2 starting at index K = |coeffs|.
  const std::size_t k = f.coeffs().size();
  std::vector<Letter> u_per;
  std::vector<Letter> v_per;
  const std::size_t period = (f.tail() == Tail::kAltPlusEven || f.tail() == Tail::kAltMinusEven) ? 2 : 1;
  for (std::size_t i = k; i < k + period; ++i) {
    auto [a, b] = letters_for(f.coefficient(i));
    u_per.push_back(a);
    v_per.push_back(b);
  }
  return {SignedWord(std::move(u_pre), std::move(u_per)), SignedWord(std::move(v_pre), std::move(v_per))};
}

}  // namespace locuslab
