#include "locuslab/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "locuslab/bseries.hpp"
#include "locuslab/error.hpp"
#include "locuslab/parallel.hpp"

namespace locuslab {

namespace {

struct Key {
  int level;
  long long a;
  long long b;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = std::hash<long long>{}(k.a);
    h ^= std::hash<long long>{}(k.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<int>{}(k.level) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Memo entries beyond this are not recorded; the search stays correct, only slower.
constexpr std::size_t kMemoCap = std::size_t{1} << 22;

// Residue pair (gamma, lambda) or the real and imaginary parts of one complex residue.
using Residue = std::array<double, 2>;

struct RealPair {
  double g, l, bg, bl;
  Residue child(const Residue& r, int b) const { return {r[0] / g + b, r[1] / l + b}; }
  bool fits(const Residue& r) const { return std::abs(r[0]) <= bg && std::abs(r[1]) <= bl; }
  double score(const Residue& r) const { return std::abs(r[0]) / bg + std::abs(r[1]) / bl; }
};

struct ComplexOne {
  std::complex<double> z;
  double bound;
  Residue child(const Residue& r, int b) const {
    const std::complex<double> c = std::complex<double>(r[0], r[1]) / z + static_cast<double>(b);
    return {c.real(), c.imag()};
  }
  bool fits(const Residue& r) const { return std::hypot(r[0], r[1]) <= bound; }
  double score(const Residue& r) const { return std::hypot(r[0], r[1]) / bound; }
};

template <class Space>
class Search {
 public:
  Search(const Space& space, int max_depth, double q)
      : space_(space), max_depth_(max_depth), q_(q), per_level_(static_cast<std::size_t>(max_depth) + 1, 0) {}

  EscapeResult run(const Residue& root) {
    EscapeResult out;
    if (!space_.fits(root)) return out;
    const bool ok = dfs(root, 0);
    out.status = ok ? EscapeStatus::kSurvived : EscapeStatus::kEscaped;
    out.depth = ok ? max_depth_ : deepest_ + 1;
    out.branch_count_peak = *std::max_element(per_level_.begin(), per_level_.end());
    out.nodes = nodes_;
    return out;
  }

 private:
  bool dfs(const Residue& r, int level) {
    ++nodes_;
    ++per_level_[static_cast<std::size_t>(level)];
    deepest_ = std::max(deepest_, level);
    if (level == max_depth_) return true;
    Key key{};
    if (q_ > 0) {
      key = {level, std::llround(r[0] / q_), std::llround(r[1] / q_)};
      if (dead_.count(key)) return false;
    }
    std::array<Residue, 3> kids;
    std::array<double, 3> score;
    int n = 0;
    for (int b = -1; b <= 1; ++b) {
      const Residue c = space_.child(r, b);
      if (!space_.fits(c)) continue;
      // Insertion by score: most central residue first.
      const double s = space_.score(c);
      int k = n++;
      while (k > 0 && score[static_cast<std::size_t>(k - 1)] > s) {
        kids[static_cast<std::size_t>(k)] = kids[static_cast<std::size_t>(k - 1)];
        score[static_cast<std::size_t>(k)] = score[static_cast<std::size_t>(k - 1)];
        --k;
      }
      kids[static_cast<std::size_t>(k)] = c;
      score[static_cast<std::size_t>(k)] = s;
    }
    for (int k = 0; k < n; ++k) {
      if (dfs(kids[static_cast<std::size_t>(k)], level + 1)) return true;
    }
    if (q_ > 0 && dead_.size() < kMemoCap) dead_.insert(key);
    return false;
  }

  const Space& space_;
  int max_depth_;
  double q_;
  std::vector<std::uint64_t> per_level_;
  std::unordered_set<Key, KeyHash> dead_;
  std::uint64_t nodes_ = 0;
  int deepest_ = -1;
};

}  // namespace

EscapeResult membership(const Params& params, int max_depth, double dedup_q) {
  if (max_depth < 0) throw Error(ErrorCode::kPrecondition, "max_depth must be nonnegative");
  const double g = params.gamma();
  const double l = params.lambda();
  if (g == 0.0 || l == 0.0) throw Error(ErrorCode::kDomain, "membership needs gamma, lambda != 0");
  if (dedup_q < 0) dedup_q = (1.0 - params.contraction()) * 1e-4;
  const RealPair space{g, l, std::abs(g) / (1.0 - std::abs(g)), std::abs(l) / (1.0 - std::abs(l))};
  return Search<RealPair>(space, max_depth, dedup_q).run({1.0, 1.0});
}

EscapeResult membership_M(std::complex<double> z, int max_depth, double dedup_q) {
  if (max_depth < 0) throw Error(ErrorCode::kPrecondition, "max_depth must be nonnegative");
  const double a = std::abs(z);
  if (a == 0.0 || !(a < 1.0)) throw Error(ErrorCode::kDomain, "membership_M needs 0 < |z| < 1");
  if (dedup_q < 0) dedup_q = (1.0 - a) * 1e-4;
  const ComplexOne space{z, a / (1.0 - a)};
  return Search<ComplexOne>(space, max_depth, dedup_q).run({1.0, 0.0});
}

PlanePoint pixel_center(const RenderJob& job, int i, int j) {
  const double n = job.resolution;
  return {job.x0 + (i + 0.5) * (job.x1 - job.x0) / n, job.y1 - (j + 0.5) * (job.y1 - job.y0) / n};
}

RenderResult render(const RenderJob& job, Palette palette) {
  if (job.resolution < 1 || job.tile < 1 || job.resolution % job.tile != 0) {
    throw Error(ErrorCode::kPrecondition, "tile must divide the resolution");
  }
  if (!(job.x0 < job.x1) || !(job.y0 < job.y1)) throw Error(ErrorCode::kPrecondition, "empty window");
  if (job.max_depth < 0) throw Error(ErrorCode::kPrecondition, "max_depth must be nonnegative");
  RenderResult out;
  const int n = job.resolution;
  out.image.width = n;
  out.image.height = n;
  out.image.pixels.assign(static_cast<std::size_t>(n) * n, kWhite);
  const int tiles_per_row = n / job.tile;
  const std::size_t tiles = static_cast<std::size_t>(tiles_per_row) * tiles_per_row;
  enum : std::uint8_t { kEsc, kSurv, kTriv, kClip };
  std::vector<std::uint8_t> cls(out.image.pixels.size(), kEsc);

  parallel_for(
      tiles,
      [&](std::size_t t) {
        const int ti = static_cast<int>(t % static_cast<std::size_t>(tiles_per_row));
        const int tj = static_cast<int>(t / static_cast<std::size_t>(tiles_per_row));
        for (int j = tj * job.tile; j < (tj + 1) * job.tile; ++j) {
          for (int i = ti * job.tile; i < (ti + 1) * job.tile; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * n + i;
            const PlanePoint c = pixel_center(job, i, j);
            const RegionClass region = trivial_region_test(c.x, c.y);
            if (region == RegionClass::kOutOfDomain) {
              cls[k] = kClip;
              continue;
            }
            EscapeResult r;
            // |x| < 1/2 cannot be a zero of a series in B; the root is pruned.
            // The binary palette paints the trivial region gray whatever the
            // search says, and those searches are most of the work.
            const bool skip = palette == Palette::kBinary && region == RegionClass::kTrivialN;
            if (!skip && std::abs(c.x) >= 0.5 && std::abs(c.y) >= 0.5) {
              r = membership(Params(c.x, c.y), job.max_depth, job.dedup_q);
            }
            cls[k] = region == RegionClass::kTrivialN ? kTriv : (r.survived() ? kSurv : kEsc);
            std::uint8_t value = kWhite;
            if (palette == Palette::kBinary) {
              value = region == RegionClass::kTrivialN ? kGray : (r.survived() ? kBlack : kWhite);
            } else if (r.survived()) {
              value = kBlack;
            } else {
              const double frac = job.max_depth > 0 ? static_cast<double>(r.depth) / job.max_depth : 0.0;
              value = static_cast<std::uint8_t>(255 - std::lround(200.0 * frac));
            }
            out.image.pixels[k] = value;
          }
        }
      },
      job.threads);

  for (auto c : cls) {
    switch (c) {
      case kEsc: ++out.escaped; break;
      case kSurv: ++out.survived; break;
      case kTriv: ++out.trivial; break;
      case kClip: ++out.clipped; break;
    }
  }
  if (out.clipped > 0) {
    out.warnings.push_back(std::to_string(out.clipped) +
                           " pixels lie outside the open unit square and were clipped to white");
  }
  return out;
}

void write_pgm(const std::string& path, const Image& image) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  os << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!os) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

Image read_pgm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::string magic;
  int maxval = 0;
  Image img;
  is >> magic >> img.width >> img.height >> maxval;
  if (magic != "P5" || maxval != 255 || img.width <= 0 || img.height <= 0) {
    throw Error(ErrorCode::kParse, "'" + path + "' is not an 8-bit binary PGM");
  }
  is.get();
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  is.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!is) throw Error(ErrorCode::kParse, "truncated PGM '" + path + "'");
  return img;
}

}  // namespace locuslab
