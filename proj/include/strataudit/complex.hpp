#pragma once
// Geometric simplicial complexes in the plane (dimension <= 2): validation,
// directional heights, and lower-star filtration construction.

#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "strataudit/geometry.hpp"

namespace strataudit {

struct SimplicialComplex2D {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 2>> edges;      // i < j
  std::vector<std::array<int, 3>> triangles;  // i < j < k

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  int simplex_count() const {
    return vertex_count() + edge_count() + triangle_count();
  }

  void add_edge(int i, int j) {
    if (i > j) std::swap(i, j);
    edges.push_back({i, j});
  }
  void add_triangle(int i, int j, int k) {
    std::array<int, 3> t{i, j, k};
    std::sort(t.begin(), t.end());
    triangles.push_back(t);
  }
};

// Raised when a direction induces tied vertex heights.
struct degenerate_direction_error : std::runtime_error {
  int v1 = -1;
  int v2 = -1;
  degenerate_direction_error(int a, int b)
      : std::runtime_error("degenerate direction: vertices " +
                           std::to_string(a) + " and " + std::to_string(b) +
                           " tie in height"),
        v1(a),
        v2(b) {}
};

namespace detail {

// Closed-segment intersection test for segments that share no endpoint.
inline bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    return true;
  }
  auto on_segment = [](Point2 p, Point2 q, Point2 r) {
    if (orientation(p, q, r) != 0) return false;
    return r.x >= std::min(p.x, q.x) - kCollinearTol &&
           r.x <= std::max(p.x, q.x) + kCollinearTol &&
           r.y >= std::min(p.y, q.y) - kCollinearTol &&
           r.y <= std::max(p.y, q.y) + kCollinearTol;
  };
  return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
         on_segment(c, d, b);
}

inline bool point_in_segment_interior(Point2 a, Point2 b, Point2 p) {
  if (orientation(a, b, p) != 0) return false;
  const double t = dot(p - a, b - a) / dot(b - a, b - a);
  return t > 1e-12 && t < 1.0 - 1e-12 && distance(p, a) > 1e-12 &&
         distance(p, b) > 1e-12;
}

}  // namespace detail

struct ValidationReport {
  std::vector<std::string> face_closure;          // human-readable violations
  std::vector<std::array<int, 2>> crossing_edges; // edge-index pairs
  std::vector<std::array<int, 2>> vertex_on_edge; // (vertex id, edge index)
  GeneralPositionReport general_position;
  std::vector<std::string> index_errors;

  bool valid() const {
    return face_closure.empty() && crossing_edges.empty() &&
           vertex_on_edge.empty() && index_errors.empty() &&
           general_position.ok();
  }
};

inline ValidationReport validate(const SimplicialComplex2D& k) {
  ValidationReport report;
  const int nv = k.vertex_count();

  for (int e = 0; e < k.edge_count(); ++e) {
    const auto [i, j] = std::pair{k.edges[e][0], k.edges[e][1]};
    if (i < 0 || j >= nv || i >= j) {
      report.index_errors.push_back("edge " + std::to_string(e) +
                                    " has bad vertex ids");
    }
  }
  std::set<std::array<int, 2>> edge_set(k.edges.begin(), k.edges.end());
  for (int t = 0; t < k.triangle_count(); ++t) {
    const auto& tri = k.triangles[t];
    if (tri[0] < 0 || tri[2] >= nv || tri[0] >= tri[1] || tri[1] >= tri[2]) {
      report.index_errors.push_back("triangle " + std::to_string(t) +
                                    " has bad vertex ids");
      continue;
    }
    for (const auto& e : {std::array<int, 2>{tri[0], tri[1]},
                          std::array<int, 2>{tri[0], tri[2]},
                          std::array<int, 2>{tri[1], tri[2]}}) {
      if (!edge_set.count(e)) {
        report.face_closure.push_back(
            "triangle " + std::to_string(t) + " missing edge (" +
            std::to_string(e[0]) + "," + std::to_string(e[1]) + ")");
      }
    }
  }
  if (!report.index_errors.empty()) return report;

  for (int e = 0; e < k.edge_count(); ++e) {
    for (int f = e + 1; f < k.edge_count(); ++f) {
      const auto& a = k.edges[e];
      const auto& b = k.edges[f];
      if (a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1]) {
        continue;  // shared vertex is a proper intersection
      }
      if (detail::segments_cross(k.vertices[a[0]], k.vertices[a[1]],
                                 k.vertices[b[0]], k.vertices[b[1]])) {
        report.crossing_edges.push_back({e, f});
      }
    }
  }
  for (int v = 0; v < nv; ++v) {
    for (int e = 0; e < k.edge_count(); ++e) {
      if (v == k.edges[e][0] || v == k.edges[e][1]) continue;
      if (detail::point_in_segment_interior(
              k.vertices[k.edges[e][0]], k.vertices[k.edges[e][1]],
              k.vertices[v])) {
        report.vertex_on_edge.push_back({v, e});
      }
    }
  }
  report.general_position = general_position_check(k.vertices);
  return report;
}

inline std::vector<double> heights(const SimplicialComplex2D& k, Direction s) {
  std::vector<double> h;
  h.reserve(k.vertices.size());
  for (const Point2& p : k.vertices) h.push_back(s.height_of(p));
  return h;
}

// One simplex of a filtration. Global ids: vertices, then edges, then
// triangles, in the complex's storage order.
struct FiltSimplex {
  int id = 0;
  int dim = 0;
  std::array<int, 3> verts{-1, -1, -1};  // unused slots are -1
  double value = 0.0;
};

struct Filtration {
  Direction direction;
  std::vector<FiltSimplex> ordered;  // sorted by (value, dim, id)
};

// Vertex ids sorted by increasing height; throws on ties.
inline std::vector<int> vertex_order(const SimplicialComplex2D& k,
                                     Direction s) {
  const std::vector<double> h = heights(k, s);
  std::vector<int> order(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return h[a] < h[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (std::abs(h[order[i]] - h[order[i - 1]]) <= kAngleTol) {
      throw degenerate_direction_error(order[i - 1], order[i]);
    }
  }
  return order;
}

// Lower-star filtration: every simplex enters at the height of its highest
// vertex; ties broken by dimension then id so faces precede cofaces.
inline Filtration lower_star_filtration(const SimplicialComplex2D& k,
                                        Direction s) {
  const std::vector<double> h = heights(k, s);
  vertex_order(k, s);  // rejects degenerate directions

  Filtration f;
  f.direction = s;
  f.ordered.reserve(k.simplex_count());
  int id = 0;
  for (int v = 0; v < k.vertex_count(); ++v, ++id) {
    f.ordered.push_back({id, 0, {v, -1, -1}, h[v]});
  }
  for (const auto& e : k.edges) {
    f.ordered.push_back({id++, 1, {e[0], e[1], -1}, std::max(h[e[0]], h[e[1]])});
  }
  for (const auto& t : k.triangles) {
    f.ordered.push_back(
        {id++, 2, {t[0], t[1], t[2]}, std::max({h[t[0]], h[t[1]], h[t[2]]})});
  }
  std::sort(f.ordered.begin(), f.ordered.end(),
            [](const FiltSimplex& a, const FiltSimplex& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.dim != b.dim) return a.dim < b.dim;
              return a.id < b.id;
            });
  return f;
}

// True iff the two directions see the vertices in the same order.
inline bool filtration_order_equivalent(const SimplicialComplex2D& k,
                                        Direction s, Direction s2) {
  return vertex_order(k, s) == vertex_order(k, s2);
}

}  // namespace strataudit
