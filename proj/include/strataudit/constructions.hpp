#pragma once
// Worked-example generators: the figure triangle, the linear-lower-bound
// complex, the lost-vertex pair, random corpus helpers, and Hausdorff
// distance between complexes.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "strataudit/complex.hpp"
#include "strataudit/geometry.hpp"
#include "strataudit/stratification.hpp"

namespace strataudit {

// Filled triangle with vertices (0,0), (2,1), (1,3); the y-direction sees the
// vertices in index order.
inline SimplicialComplex2D example_triangle() {
  SimplicialComplex2D k;
  k.vertices = {{0, 0}, {2, 1}, {1, 3}};
  k.add_edge(0, 1);
  k.add_edge(0, 2);
  k.add_edge(1, 2);
  k.add_triangle(0, 1, 2);
  return k;
}

struct LowerBoundComplex {
  SimplicialComplex2D complex;
  std::vector<int> apex_ids;  // 0-based ids of the thin-triangle apexes
  double epsilon_used = 0;
  double delta_star = 0;  // actual minimum pairwise chord-slope gap
  std::vector<ObservingRegion> apex_regions;
  bool disjoint = false;
};

// n disjoint thin filled triangles whose apex observing regions are pairwise
// disjoint, forcing at least n descriptor directions. Base vertices follow
// the published coordinates; the apex offset is a quarter of the measured
// minimum chord-slope gap, and disjointness is certified post hoc.
inline LowerBoundComplex lower_bound_complex(int n) {
  if (n < 1) throw std::invalid_argument("lower_bound_complex: n must be >= 1");
  LowerBoundComplex result;

  std::vector<double> slopes;  // chord slope for triangle i is 1 + 1/(2i)
  for (int t = 0; t < n; ++t) {
    const int i = 3 * t + 2;  // 1-based apex index: 2, 5, 8, ...
    slopes.push_back(1.0 + 1.0 / (2.0 * i));
  }
  double delta_star;
  if (n == 1) {
    delta_star = 1.0 / 3.0;
  } else {
    delta_star = kInf;
    for (std::size_t a = 0; a + 1 < slopes.size(); ++a) {
      delta_star = std::min(delta_star, slopes[a] - slopes[a + 1]);
    }
  }
  const double eps = delta_star / 4.0;

  SimplicialComplex2D k;
  k.vertices.resize(3 * n);
  for (int t = 0; t < n; ++t) {
    const int i = 3 * t + 2;
    const int base0 = i - 2, apex = i - 1, base1 = i;  // 0-based ids
    k.vertices[base0] = {double(i - 1), double(i - 1)};
    k.vertices[base1] = {double(i + 1), (i + 1) + 1.0 / i};
    k.vertices[apex] = {double(i), i + 1.0 / (2.0 * i) + eps};
    k.add_edge(base0, apex);
    k.add_edge(apex, base1);
    k.add_edge(base0, base1);
    k.add_triangle(base0, apex, base1);
    result.apex_ids.push_back(apex);
  }

  result.complex = std::move(k);
  result.epsilon_used = eps;
  result.delta_star = delta_star;

  const std::vector<ObservingRegion> all =
      all_observing_regions(result.complex);
  for (int apex : result.apex_ids) result.apex_regions.push_back(all[apex]);
  result.disjoint = true;
  for (std::size_t a = 0; a < result.apex_regions.size(); ++a) {
    for (std::size_t b = a + 1; b < result.apex_regions.size(); ++b) {
      if (!arcset_intersect(result.apex_regions[a].region,
                            result.apex_regions[b].region)
               .empty()) {
        result.disjoint = false;
      }
    }
  }
  if (!result.disjoint) {
    throw std::runtime_error(
        "lower_bound_complex: apex regions are not disjoint (n=" +
        std::to_string(n) + ", eps=" + std::to_string(eps) + ")");
  }
  return result;
}

inline nlohmann::json lower_bound_report(const LowerBoundComplex& c) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const ObservingRegion& r : c.apex_regions) {
    nlohmann::json region = nlohmann::json::array();
    for (const Arc& a : r.region.arcs()) {
      region.push_back({{"start", a.start}, {"length", a.length}});
    }
    arcs.push_back({{"vertex", r.vertex}, {"arcs", region}});
  }
  return nlohmann::json{{"n", c.apex_ids.size()},
                        {"delta_star", c.delta_star},
                        {"epsilon_used", c.epsilon_used},
                        {"disjoint", c.disjoint},
                        {"min_directions_bound", c.apex_ids.size()},
                        {"region_arcs", arcs}};
}

struct LostVertexPair {
  SimplicialComplex2D k;        // with v and edges (u,v), (v,w)
  SimplicialComplex2D k_prime;  // v replaced by the chord (u,w)
  int u_id = -1, v_id = -1, w_id = -1;
  double theta = 0;
  double predicted_hausdorff = 0;
};

namespace detail {

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

inline bool point_in_triangle(Point2 p, Point2 a, Point2 b, Point2 c) {
  const double d1 = cross(b - a, p - a);
  const double d2 = cross(c - b, p - b);
  const double d3 = cross(a - c, p - c);
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

inline double point_complex_distance(Point2 p, const SimplicialComplex2D& k) {
  double best = kInf;
  for (const auto& t : k.triangles) {
    if (point_in_triangle(p, k.vertices[t[0]], k.vertices[t[1]],
                          k.vertices[t[2]])) {
      return 0.0;
    }
  }
  for (const auto& e : k.edges) {
    best = std::min(best, point_segment_distance(p, k.vertices[e[0]],
                                                 k.vertices[e[1]]));
  }
  for (const Point2& v : k.vertices) best = std::min(best, distance(p, v));
  return best;
}

// Distance from point p to the nearest point of simplex (edge) e of k.
inline int find_vertex(const SimplicialComplex2D& k, Point2 p) {
  for (int i = 0; i < k.vertex_count(); ++i) {
    if (k.vertices[i] == p) return i;
  }
  return -1;
}

}  // namespace detail

// Builds the pair (K, K') of the lost-vertex construction. Throws
// invalid_argument naming the violated condition.
inline LostVertexPair lost_vertex_pair(
    Point2 u, Point2 v, Point2 w,
    const SimplicialComplex2D* context = nullptr) {
  const double ru = distance(u, v);
  const double rw = distance(w, v);
  if (std::abs(ru - rw) > 1e-12) {
    throw std::invalid_argument(
        "lost_vertex_pair: condition (b) violated, ||u-v|| != ||w-v||");
  }
  const double r = rw;

  LostVertexPair pair;
  SimplicialComplex2D base = context ? *context : SimplicialComplex2D{};

  int u_id = detail::find_vertex(base, u);
  int w_id = detail::find_vertex(base, w);
  SimplicialComplex2D k = base;
  if (u_id < 0) {
    u_id = k.vertex_count();
    k.vertices.push_back(u);
  }
  if (w_id < 0) {
    w_id = k.vertex_count();
    k.vertices.push_back(w);
  }
  const int v_id = k.vertex_count();
  k.vertices.push_back(v);
  k.add_edge(u_id, v_id);
  k.add_edge(v_id, w_id);

  // Condition (a): collinear triples break the bound (theta would hit 0 or
  // pi). Shared coordinate values only flatten axis-aligned criticals and are
  // tolerated here; the canonical triple (-1,0),(0,1),(1,0) has one.
  const GeneralPositionReport gp = general_position_check(k.vertices);
  if (!gp.collinear_triples.empty()) {
    throw std::invalid_argument(
        "lost_vertex_pair: condition (a) violated, collinear vertices");
  }

  // Condition (c): the open ball B(v, ||w-v||) meets K only in v and the two
  // incident edges. Checked geometrically against every other simplex.
  for (int i = 0; i < k.vertex_count(); ++i) {
    if (i == v_id) continue;
    if (distance(k.vertices[i], v) < r - 1e-12) {
      throw std::invalid_argument(
          "lost_vertex_pair: condition (c) violated, vertex " +
          std::to_string(i) + " inside the open ball");
    }
  }
  for (const auto& e : k.edges) {
    if (e[0] == v_id || e[1] == v_id) continue;
    if (detail::point_segment_distance(v, k.vertices[e[0]], k.vertices[e[1]]) <
        r - 1e-12) {
      throw std::invalid_argument(
          "lost_vertex_pair: condition (c) violated, an edge enters the open "
          "ball");
    }
  }
  for (const auto& t : k.triangles) {
    SimplicialComplex2D tri;
    tri.vertices = {k.vertices[t[0]], k.vertices[t[1]], k.vertices[t[2]]};
    tri.add_edge(0, 1);
    tri.add_edge(0, 2);
    tri.add_edge(1, 2);
    tri.add_triangle(0, 1, 2);
    if (detail::point_complex_distance(v, tri) < r - 1e-12) {
      throw std::invalid_argument(
          "lost_vertex_pair: condition (c) violated, a triangle enters the "
          "open ball");
    }
  }

  // K' = {(u,w)} + K - {v, (u,v), (v,w)}.
  SimplicialComplex2D kp = base;
  int u2 = detail::find_vertex(kp, u);
  int w2 = detail::find_vertex(kp, w);
  if (u2 < 0) {
    u2 = kp.vertex_count();
    kp.vertices.push_back(u);
  }
  if (w2 < 0) {
    w2 = kp.vertex_count();
    kp.vertices.push_back(w);
  }
  kp.add_edge(u2, w2);

  const double angle_uvw =
      std::acos(std::clamp(dot(u - v, w - v) / (ru * rw), -1.0, 1.0));
  pair.k = std::move(k);
  pair.k_prime = std::move(kp);
  pair.u_id = u_id;
  pair.v_id = v_id;
  pair.w_id = w_id;
  pair.theta = kPi - angle_uvw;
  // Height of the isosceles triangle over the chord (u, w): the arm length
  // times the cosine of half the apex angle.
  pair.predicted_hausdorff = r * std::cos(angle_uvw / 2);
  return pair;
}

struct HausdorffResult {
  double distance = 0;
  double error_bound = 0;  // max segment length / resolution
};

// Symmetric Hausdorff distance between the underlying point sets, by
// maximizing exact point-to-set distance over vertices plus `resolution`
// uniform samples per segment (triangle interiors contribute via their
// edges, which face closure guarantees are present).
inline HausdorffResult hausdorff_distance(const SimplicialComplex2D& a,
                                          const SimplicialComplex2D& b,
                                          int resolution) {
  if (resolution < 1) {
    throw std::invalid_argument("hausdorff_distance: resolution must be >= 1");
  }
  if (a.vertices.empty() || b.vertices.empty()) {
    throw std::invalid_argument("hausdorff_distance: empty complex");
  }
  auto directed = [&](const SimplicialComplex2D& from,
                      const SimplicialComplex2D& to) {
    double worst = 0;
    for (const Point2& p : from.vertices) {
      worst = std::max(worst, detail::point_complex_distance(p, to));
    }
    for (const auto& e : from.edges) {
      const Point2 p0 = from.vertices[e[0]];
      const Point2 p1 = from.vertices[e[1]];
      for (int j = 1; j < resolution; ++j) {
        const double t = static_cast<double>(j) / resolution;
        const Point2 p = p0 + t * (p1 - p0);
        worst = std::max(worst, detail::point_complex_distance(p, to));
      }
    }
    return worst;
  };
  double max_seg = 0;
  for (const auto& e : a.edges) {
    max_seg = std::max(max_seg, distance(a.vertices[e[0]], a.vertices[e[1]]));
  }
  for (const auto& e : b.edges) {
    max_seg = std::max(max_seg, distance(b.vertices[e[0]], b.vertices[e[1]]));
  }
  HausdorffResult result;
  result.distance = std::max(directed(a, b), directed(b, a));
  result.error_bound = max_seg / resolution;
  return result;
}

// Star-shaped random cycle graph: n vertices at sorted random angles around
// the origin with random radii in [1, 2]. Always a simple polygon; resampled
// coordinates keep the vertex set in general position.
inline SimplicialComplex2D random_cycle_graph(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("random_cycle_graph: n must be >= 3");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(rng.uniform(0, kTau));
    std::sort(angles.begin(), angles.end());
    bool spaced = true;
    for (int i = 0; i < n; ++i) {
      const double next = angles[(i + 1) % n] + (i + 1 == n ? kTau : 0.0);
      if (next - angles[i] < 1e-3) spaced = false;
    }
    if (!spaced) continue;
    SimplicialComplex2D k;
    for (int i = 0; i < n; ++i) {
      const double r = rng.uniform(1.0, 2.0);
      k.vertices.push_back({r * std::cos(angles[i]), r * std::sin(angles[i])});
    }
    for (int i = 0; i < n; ++i) k.add_edge(i, (i + 1) % n);
    if (!general_position_check(k.vertices).ok()) continue;
    if (!validate(k).valid()) continue;
    return k;
  }
  throw std::runtime_error("random_cycle_graph: failed to generate");
}

// Random isosceles triple (u, v, w) with ||u-v|| = ||w-v||, apex angle
// bounded away from 0 and pi.
inline std::array<Point2, 3> random_isosceles_triple(std::uint64_t seed) {
  Rng rng(seed);
  const Point2 v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const double bisector = rng.uniform(0, kTau);
  const double half = rng.uniform(0.2, kPi / 2 - 0.2);  // half of angle uvw
  const double r = rng.uniform(0.5, 2.0);
  const Point2 u{v.x + r * std::cos(bisector - half),
                 v.y + r * std::sin(bisector - half)};
  const Point2 w{v.x + r * std::cos(bisector + half),
                 v.y + r * std::sin(bisector + half)};
  return {u, v, w};
}

}  // namespace strataudit
