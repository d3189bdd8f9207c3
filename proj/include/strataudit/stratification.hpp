#pragma once
// Coarse stratification of S^1 induced by a planar vertex set, stratum
// representatives, observing regions, and theta-observability.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "strataudit/complex.hpp"
#include "strataudit/descriptors.hpp"
#include "strataudit/geometry.hpp"

namespace strataudit {

// A 0-stratum: a direction where at least one vertex pair ties in height.
struct CriticalDirection {
  double angle = 0.0;
  std::vector<std::array<int, 2>> pairs;  // vertex pairs tying here
  // Set when another critical fell within 10x the merge tolerance; the
  // reported angle then carries an uncertainty band of that width.
  bool merge_warning = false;
};

// An open 1-stratum between consecutive criticals, with its total vertex
// order (sampled at the midpoint).
struct StratumCell {
  double start = 0.0;
  double length = 0.0;
  std::vector<int> vertex_order;

  double midpoint() const { return normalize_angle(start + length / 2); }
  Arc arc() const { return Arc{start, length, false}; }
};

struct Stratification {
  std::vector<CriticalDirection> critical;
  std::vector<StratumCell> cells;
};

// For each unordered vertex pair, the two antipodal directions orthogonal to
// its difference vector; sorted and merged within kAngleTol.
inline std::vector<CriticalDirection> critical_directions(
    const std::vector<Point2>& v) {
  if (v.size() < 2) {
    throw std::invalid_argument("critical_directions: need >= 2 points");
  }
  std::vector<CriticalDirection> raw;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point2 d = v[j] - v[i];
      if (d.x == 0 && d.y == 0) {
        throw degeneracy_error("critical_directions: duplicate points");
      }
      const double a = std::atan2(d.y, d.x);
      raw.push_back({normalize_angle(a + kPi / 2), {{i, j}}, false});
      raw.push_back({normalize_angle(a - kPi / 2), {{i, j}}, false});
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const CriticalDirection& a, const CriticalDirection& b) {
              return a.angle < b.angle;
            });
  std::vector<CriticalDirection> merged;
  for (const CriticalDirection& c : raw) {
    if (!merged.empty() && c.angle - merged.back().angle <= kAngleTol) {
      merged.back().pairs.push_back(c.pairs[0]);
    } else {
      merged.push_back(c);
    }
  }
  // Wrap-around merge.
  if (merged.size() >= 2 &&
      merged.front().angle + kTau - merged.back().angle <= kAngleTol) {
    for (const auto& p : merged.back().pairs) {
      merged.front().pairs.push_back(p);
    }
    merged.pop_back();
  }
  // Near-merge uncertainty band.
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const double next = merged[(i + 1) % merged.size()].angle +
                        (i + 1 == merged.size() ? kTau : 0.0);
    if (next - merged[i].angle <= 10 * kAngleTol) {
      merged[i].merge_warning = true;
      merged[(i + 1) % merged.size()].merge_warning = true;
    }
  }
  return merged;
}

inline Stratification coarse_stratification(const std::vector<Point2>& v) {
  Stratification s;
  s.critical = critical_directions(v);
  const std::size_t m = s.critical.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double a = s.critical[i].angle;
    const double b = s.critical[(i + 1) % m].angle + (i + 1 == m ? kTau : 0.0);
    StratumCell cell;
    cell.start = a;
    cell.length = b - a;
    const Direction mid{a + cell.length / 2};
    cell.vertex_order.resize(v.size());
    std::vector<double> h(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) h[k] = mid.height_of(v[k]);
    for (std::size_t k = 0; k < v.size(); ++k) {
      cell.vertex_order[k] = static_cast<int>(k);
    }
    std::sort(cell.vertex_order.begin(), cell.vertex_order.end(),
              [&](int x, int y) { return h[x] < h[y]; });
    s.cells.push_back(std::move(cell));
  }
  return s;
}

inline double min_stratum(const Stratification& s) {
  double m = kTau;
  for (const StratumCell& c : s.cells) m = std::min(m, c.length);
  return m;
}

inline std::vector<Direction> stratum_representatives(const Stratification& s) {
  std::vector<Direction> reps;
  reps.reserve(s.cells.size());
  for (const StratumCell& c : s.cells) reps.push_back(Direction{c.midpoint()});
  return reps;
}

// Vertices whose height carries an off-diagonal birth or death of the
// persistence diagram in direction s.
inline std::set<int> observed_vertices(const SimplicialComplex2D& k,
                                       Direction s) {
  const PersistenceDiagram d = persistence_diagram(k, s);
  const std::vector<double> h = heights(k, s);
  std::set<int> observed;
  auto vertex_at_height = [&](double t) -> int {
    for (int v = 0; v < k.vertex_count(); ++v) {
      if (std::abs(h[v] - t) <= kHeightTol) return v;
    }
    return -1;
  };
  for (const PdPoint& p : d.points) {
    if (int v = vertex_at_height(p.birth); v >= 0) observed.insert(v);
    if (!p.essential()) {
      if (int v = vertex_at_height(p.death); v >= 0) observed.insert(v);
    }
  }
  return observed;
}

struct ObservingRegion {
  int vertex = -1;
  ArcSet region;
  double theta = 0.0;  // largest half-width of a contained arc
};

// Cell sweep: observability is constant per open cell, so each cell is
// classified at its midpoint and regions are unions of whole cells.
inline std::vector<ObservingRegion> all_observing_regions(
    const SimplicialComplex2D& k) {
  const Stratification s = coarse_stratification(k.vertices);
  std::vector<std::vector<Arc>> arcs(k.vertex_count());
  for (const StratumCell& cell : s.cells) {
    const std::set<int> obs = observed_vertices(k, Direction{cell.midpoint()});
    for (int v : obs) arcs[v].push_back(cell.arc());
  }
  std::vector<ObservingRegion> regions;
  regions.reserve(k.vertex_count());
  for (int v = 0; v < k.vertex_count(); ++v) {
    ObservingRegion r;
    r.vertex = v;
    r.region = ArcSet::from_arcs(arcs[v]);
    r.theta = r.region.max_arc_length() / 2;
    regions.push_back(std::move(r));
  }
  return regions;
}

inline ObservingRegion observing_region(const SimplicialComplex2D& k, int v) {
  return all_observing_regions(k).at(v);
}

// Closed-form observing region of a degree-two vertex with no incident
// triangle: P1 (local max) union P2 (local min), each an intersection of two
// open half-circles.
inline ObservingRegion observing_region_degree_two(const SimplicialComplex2D& k,
                                                   int v) {
  std::vector<int> neighbors;
  for (const auto& e : k.edges) {
    if (e[0] == v) neighbors.push_back(e[1]);
    if (e[1] == v) neighbors.push_back(e[0]);
  }
  if (neighbors.size() != 2) {
    throw std::invalid_argument("observing_region_degree_two: degree != 2");
  }
  for (const auto& t : k.triangles) {
    if (t[0] == v || t[1] == v || t[2] == v) {
      throw std::invalid_argument(
          "observing_region_degree_two: vertex has an incident triangle");
    }
  }
  const Point2 u = k.vertices[neighbors[0]];
  const Point2 w = k.vertices[neighbors[1]];
  const Point2 p = k.vertices[v];
  const double au = std::atan2((u - p).y, (u - p).x);
  const double aw = std::atan2((w - p).y, (w - p).x);
  // P1 = {s : s.u < s.v and s.w < s.v}, P2 is its antipode.
  const ArcSet p1 = arcset_intersect(ArcSet::half_circle_below(au),
                                     ArcSet::half_circle_below(aw));
  const ArcSet p2 = arcset_intersect(ArcSet::half_circle_below(au + kPi),
                                     ArcSet::half_circle_below(aw + kPi));
  ObservingRegion r;
  r.vertex = v;
  r.region = arcset_union(p1, p2);
  r.theta = r.region.max_arc_length() / 2;
  return r;
}

inline double theta_observability(const SimplicialComplex2D& k, int v) {
  return observing_region(k, v).theta;
}

// Indices of cells containing no element of delta; an empty result certifies
// that delta hits all top strata.
inline std::vector<int> hits_all_strata(const Stratification& s,
                                        const std::vector<Direction>& delta) {
  std::vector<int> missed;
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    const StratumCell& c = s.cells[i];
    bool hit = false;
    for (const Direction& d : delta) {
      const double rel = normalize_angle(d.angle - c.start);
      if (rel > 0 && rel < c.length) {
        hit = true;
        break;
      }
    }
    if (!hit) missed.push_back(static_cast<int>(i));
  }
  return missed;
}

// CSV export, columns: cell_index,start_angle,length,vertex_order
// (vertex order space-separated).
inline std::string strata_csv(const Stratification& s) {
  std::string out = "cell_index,start_angle,length,vertex_order\n";
  char buf[64];
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    const StratumCell& c = s.cells[i];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,", i, c.start, c.length);
    out += buf;
    for (std::size_t j = 0; j < c.vertex_order.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(c.vertex_order[j]);
    }
    out += '\n';
  }
  return out;
}

// CSV export, columns: vertex,arc_start,arc_length,theta (one row per arc).
inline std::string regions_csv(const std::vector<ObservingRegion>& regions) {
  std::string out = "vertex,arc_start,arc_length,theta\n";
  char buf[128];
  for (const ObservingRegion& r : regions) {
    for (const Arc& a : r.region.arcs()) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", r.vertex,
                    a.start, a.length, r.theta);
      out += buf;
    }
    if (r.region.empty()) {
      std::snprintf(buf, sizeof(buf), "%d,,,0\n", r.vertex);
      out += buf;
    }
  }
  return out;
}

}  // namespace strataudit
