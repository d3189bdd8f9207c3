#pragma once
// Planar vector math, angle normalization, general-position checking,
// seeded perturbation, and an algebra of finite unions of open circular arcs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strataudit {

inline constexpr double kTau = 2.0 * std::numbers::pi;
inline constexpr double kPi = std::numbers::pi;

// Absolute tolerance for angle comparisons (atan2 noise floor). Critical
// directions closer than this are merged.
inline constexpr double kAngleTol = 1e-12;

// Tolerance on the normalized cross product for collinearity tests.
inline constexpr double kCollinearTol = 1e-12;

// Tolerance for height comparisons and descriptor equality.
inline constexpr double kHeightTol = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

  double norm() const { return std::hypot(x, y); }
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

// Normalizes an angle into [0, 2pi).
inline double normalize_angle(double a) {
  a = std::fmod(a, kTau);
  if (a < 0) a += kTau;
  if (a >= kTau) a = 0.0;
  return a;
}

// A point on the unit circle, stored as its angle in [0, 2pi).
struct Direction {
  double angle = 0.0;

  Direction() = default;
  explicit Direction(double a) : angle(normalize_angle(a)) {}

  Point2 vector() const { return {std::cos(angle), std::sin(angle)}; }
  double height_of(Point2 p) const {
    return std::cos(angle) * p.x + std::sin(angle) * p.y;
  }
  Direction antipode() const { return Direction(angle + kPi); }
};

// Portable seeded RNG: mt19937_64 with 53-bit mantissa draws. Perturbation
// regression pins depend on this exact construction; do not change it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sign of the orientation of (a, b, c): +1 ccw, -1 cw, 0 collinear within
// kCollinearTol on the normalized cross product.
inline int orientation(Point2 a, Point2 b, Point2 c) {
  const Point2 u = b - a;
  const Point2 v = c - a;
  const double cr = cross(u, v);
  const double scale = u.norm() * v.norm();
  if (scale == 0.0 || std::abs(cr) <= kCollinearTol * scale) return 0;
  return cr > 0 ? 1 : -1;
}

struct GeneralPositionReport {
  std::vector<std::array<int, 3>> collinear_triples;
  // (i, j, axis) with axis 0 for a shared x-coordinate, 1 for y.
  std::vector<std::array<int, 3>> shared_coordinate_pairs;

  bool ok() const {
    return collinear_triples.empty() && shared_coordinate_pairs.empty();
  }
};

inline GeneralPositionReport general_position_check(
    const std::vector<Point2>& v) {
  GeneralPositionReport report;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (v[i].x == v[j].x) report.shared_coordinate_pairs.push_back({i, j, 0});
      if (v[i].y == v[j].y) report.shared_coordinate_pairs.push_back({i, j, 1});
      for (int k = j + 1; k < n; ++k) {
        if (orientation(v[i], v[j], v[k]) == 0) {
          report.collinear_triples.push_back({i, j, k});
        }
      }
    }
  }
  return report;
}

// Offsets every coordinate by an independent uniform draw from
// [-magnitude, magnitude). Deterministic given the seed.
inline std::vector<Point2> perturb(const std::vector<Point2>& v,
                                   double magnitude, std::uint64_t seed) {
  if (!(magnitude > 0)) {
    throw std::invalid_argument("perturb: magnitude must be positive");
  }
  Rng rng(seed);
  std::vector<Point2> out;
  out.reserve(v.size());
  for (const Point2& p : v) {
    const double dx = rng.uniform(-magnitude, magnitude);
    const double dy = rng.uniform(-magnitude, magnitude);
    out.push_back({p.x + dx, p.y + dy});
  }
  return out;
}

// An open circular arc traversed counterclockwise from `start`.
struct Arc {
  double start = 0.0;   // in [0, 2pi)
  double length = 0.0;  // in (0, 2pi]
  bool full = false;    // whole circle; start is irrelevant then

  double end() const { return start + length; }  // may exceed 2pi
};

// A finite union of pairwise-disjoint open arcs in canonical sorted order.
// Arcs that touch at a single endpoint are merged (the shared point is
// measure zero and never carries information here).
class ArcSet {
 public:
  ArcSet() = default;

  static ArcSet empty_set() { return ArcSet(); }

  static ArcSet full_circle() {
    ArcSet s;
    s.arcs_.push_back(Arc{0.0, kTau, true});
    return s;
  }

  // Builds a canonical set from arbitrary (possibly overlapping) arcs.
  static ArcSet from_arcs(const std::vector<Arc>& raw) {
    // Split into linear segments [a, b] inside [0, 2pi].
    std::vector<std::pair<double, double>> segs;
    for (const Arc& a : raw) {
      if (a.full || a.length >= kTau - kAngleTol) {
        return full_circle();
      }
      if (a.length <= 0) continue;
      const double s = normalize_angle(a.start);
      const double e = s + a.length;
      if (e <= kTau) {
        segs.push_back({s, e});
      } else {
        segs.push_back({s, kTau});
        segs.push_back({0.0, e - kTau});
      }
    }
    return from_segments(std::move(segs));
  }

  // The open half-circle {s in S^1 | s . u < 0} for u at angle `vec_angle`.
  static ArcSet half_circle_below(double vec_angle) {
    return from_arcs({Arc{normalize_angle(vec_angle + kPi / 2), kPi}});
  }

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool is_full() const { return arcs_.size() == 1 && arcs_[0].full; }

  double measure() const {
    double m = 0;
    for (const Arc& a : arcs_) m += a.length;
    return m;
  }

  double max_arc_length() const {
    double m = 0;
    for (const Arc& a : arcs_) m = std::max(m, a.length);
    return m;
  }

  // Strict interior membership; arc endpoints are excluded.
  bool contains(double angle) const {
    if (is_full()) return true;
    for (const Arc& a : arcs_) {
      const double rel = normalize_angle(angle - a.start);
      if (rel > 0 && rel < a.length) return true;
    }
    return false;
  }
  bool contains(Direction d) const { return contains(d.angle); }

  friend ArcSet arcset_union(const ArcSet& a, const ArcSet& b) {
    std::vector<Arc> all = a.arcs_;
    all.insert(all.end(), b.arcs_.begin(), b.arcs_.end());
    return from_arcs(all);
  }

  friend ArcSet arcset_complement(const ArcSet& a) {
    if (a.empty()) return full_circle();
    if (a.is_full()) return empty_set();
    auto segs = a.split_segments();
    std::sort(segs.begin(), segs.end());
    std::vector<std::pair<double, double>> gaps;
    double cursor = 0.0;
    for (const auto& [s, e] : segs) {
      if (s > cursor + kAngleTol) gaps.push_back({cursor, s});
      cursor = std::max(cursor, e);
    }
    if (cursor < kTau - kAngleTol) gaps.push_back({cursor, kTau});
    return from_segments(std::move(gaps));
  }

  friend ArcSet arcset_intersect(const ArcSet& a, const ArcSet& b) {
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    auto sa = a.split_segments();
    auto sb = b.split_segments();
    std::vector<std::pair<double, double>> out;
    for (const auto& [s1, e1] : sa) {
      for (const auto& [s2, e2] : sb) {
        const double lo = std::max(s1, s2);
        const double hi = std::min(e1, e2);
        if (hi > lo + kAngleTol) out.push_back({lo, hi});
      }
    }
    return from_segments(std::move(out));
  }

 private:
  // Canonical arcs split at the 2pi -> 0 seam.
  std::vector<std::pair<double, double>> split_segments() const {
    std::vector<std::pair<double, double>> segs;
    for (const Arc& a : arcs_) {
      const double e = a.end();
      if (e <= kTau) {
        segs.push_back({a.start, e});
      } else {
        segs.push_back({a.start, kTau});
        segs.push_back({0.0, e - kTau});
      }
    }
    return segs;
  }

  static ArcSet from_segments(std::vector<std::pair<double, double>> segs) {
    ArcSet result;
    if (segs.empty()) return result;
    std::sort(segs.begin(), segs.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& seg : segs) {
      if (!merged.empty() && seg.first <= merged.back().second + kAngleTol) {
        merged.back().second = std::max(merged.back().second, seg.second);
      } else {
        merged.push_back(seg);
      }
    }
    // Re-join across the seam.
    bool wraps = false;
    if (merged.size() >= 2 && merged.front().first <= kAngleTol &&
        merged.back().second >= kTau - kAngleTol) {
      wraps = true;
    }
    if (merged.size() == 1 && merged[0].first <= kAngleTol &&
        merged[0].second >= kTau - kAngleTol) {
      return full_circle();
    }
    if (wraps) {
      const auto first = merged.front();
      const auto last = merged.back();
      merged.erase(merged.begin());
      merged.pop_back();
      const double len = (kTau - last.first) + first.second;
      if (len >= kTau - kAngleTol) return full_circle();
      merged.push_back({last.first, last.first + len});
    }
    for (const auto& [s, e] : merged) {
      result.arcs_.push_back(Arc{normalize_angle(s), e - s, false});
    }
    std::sort(result.arcs_.begin(), result.arcs_.end(),
              [](const Arc& x, const Arc& y) { return x.start < y.start; });
    return result;
  }

  std::vector<Arc> arcs_;
};

// Minimum over all pairs of distinct difference vectors of the angle between
// the lines they span; range (0, pi/2]. Throws degeneracy_error when two
// difference vectors are parallel (angle 0 breaks general position
// downstream).
inline double min_pairwise_line_angle(const std::vector<Point2>& v) {
  if (v.size() < 3) {
    throw std::invalid_argument("min_pairwise_line_angle: need >= 3 points");
  }
  std::vector<double> lines;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point2 d = v[j] - v[i];
      if (d.x == 0 && d.y == 0) {
        throw degeneracy_error("min_pairwise_line_angle: duplicate points");
      }
      double a = std::fmod(std::atan2(d.y, d.x), kPi);
      if (a < 0) a += kPi;
      lines.push_back(a);
    }
  }
  std::sort(lines.begin(), lines.end());
  double best = kPi;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    best = std::min(best, lines[i] - lines[i - 1]);
  }
  best = std::min(best, lines.front() + kPi - lines.back());
  if (best <= kAngleTol) {
    throw degeneracy_error(
        "min_pairwise_line_angle: parallel difference vectors");
  }
  return best;
}

}  // namespace strataudit
