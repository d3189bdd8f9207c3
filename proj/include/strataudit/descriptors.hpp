#pragma once
// Topological descriptors of a directional filtration: persistence diagrams
// (dims 0 and 1), Euler characteristic functions, Betti functions, and the
// distances between them (bottleneck, ECF L1).

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "strataudit/complex.hpp"
#include "strataudit/geometry.hpp"

namespace strataudit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct PdPoint {
  int dim = 0;
  double birth = 0.0;
  double death = kInf;  // kInf for essential classes

  bool essential() const { return std::isinf(death); }
  // Distance to the diagonal in the L-infinity matching metric.
  double diagonal_cost() const { return (death - birth) / 2.0; }
};

// Graded multiset of off-diagonal (birth, death) pairs.
struct PersistenceDiagram {
  std::vector<PdPoint> points;

  void sort() {
    std::sort(points.begin(), points.end(),
              [](const PdPoint& a, const PdPoint& b) {
                if (a.dim != b.dim) return a.dim < b.dim;
                if (a.birth != b.birth) return a.birth < b.birth;
                return a.death < b.death;
              });
  }
};

// Right-continuous piecewise-constant integer-valued function; value before
// the first breakpoint is 0. Canonical: strictly increasing heights and
// consecutive values differ.
struct StepFunction {
  std::vector<std::pair<double, int>> breakpoints;  // (height, value)

  int value_at(double t) const {
    int v = 0;
    for (const auto& [h, val] : breakpoints) {
      if (h <= t) v = val;
      else break;
    }
    return v;
  }
  int final_value() const {
    return breakpoints.empty() ? 0 : breakpoints.back().second;
  }

  // Builds the canonical form from (height, delta) events. Events at exactly
  // equal heights are summed before emitting a breakpoint.
  static StepFunction from_deltas(std::vector<std::pair<double, int>> events) {
    std::sort(events.begin(), events.end());
    StepFunction f;
    int value = 0;
    std::size_t i = 0;
    while (i < events.size()) {
      const double h = events[i].first;
      int v = value;
      while (i < events.size() && events[i].first == h) v += events[i++].second;
      if (v != value) {
        f.breakpoints.push_back({h, v});
        value = v;
      }
    }
    return f;
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void link(int root_child, int root_parent) {
    parent_[root_child] = root_parent;
  }

 private:
  std::vector<int> parent_;
};

inline std::vector<int> symmetric_difference(const std::vector<int>& a,
                                             const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

}  // namespace detail

// Persistence via union-find for dim 0 and Z/2 boundary reduction of the
// triangle columns for dim 1. Zero-persistence pairs (birth == death, i.e.
// the same lower star) are discarded; essential classes get death = inf.
inline PersistenceDiagram persistence_diagram(const SimplicialComplex2D& k,
                                              Direction s) {
  const Filtration filt = lower_star_filtration(k, s);
  const int m = static_cast<int>(filt.ordered.size());

  PersistenceDiagram diagram;
  detail::UnionFind uf(k.vertex_count());
  std::vector<double> comp_birth(k.vertex_count(), 0.0);

  // Filtration position of each edge, keyed by its vertex pair.
  std::map<std::array<int, 2>, int> edge_pos;
  std::vector<bool> edge_creates(m, false);  // by filtration position

  for (int pos = 0; pos < m; ++pos) {
    const FiltSimplex& sx = filt.ordered[pos];
    if (sx.dim == 0) {
      comp_birth[sx.verts[0]] = sx.value;
    } else if (sx.dim == 1) {
      edge_pos[{sx.verts[0], sx.verts[1]}] = pos;
      const int ra = uf.find(sx.verts[0]);
      const int rb = uf.find(sx.verts[1]);
      if (ra == rb) {
        edge_creates[pos] = true;  // creates a cycle
      } else {
        // Elder rule: the younger component dies.
        int young = ra, old = rb;
        if (comp_birth[young] < comp_birth[old]) std::swap(young, old);
        if (comp_birth[young] != sx.value) {
          diagram.points.push_back({0, comp_birth[young], sx.value});
        }
        uf.link(young, old);
      }
    }
  }

  // Reduce triangle columns against each other; final lows are creator edges.
  std::map<int, std::vector<int>> low_owner_col;  // low position -> column
  std::map<int, const FiltSimplex*> low_owner_tri;
  std::vector<bool> edge_killed(m, false);
  for (int pos = 0; pos < m; ++pos) {
    const FiltSimplex& sx = filt.ordered[pos];
    if (sx.dim != 2) continue;
    const auto [a, b, c] = std::tuple{sx.verts[0], sx.verts[1], sx.verts[2]};
    std::vector<int> col = {edge_pos.at({a, b}), edge_pos.at({a, c}),
                            edge_pos.at({b, c})};
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      auto it = low_owner_col.find(col.back());
      if (it == low_owner_col.end()) break;
      col = detail::symmetric_difference(col, it->second);
    }
    if (col.empty()) continue;  // cannot happen for planar embeddings
    const int low = col.back();
    low_owner_col[low] = col;
    low_owner_tri[low] = &sx;
    edge_killed[low] = true;
    const double birth = filt.ordered[low].value;
    if (birth != sx.value) diagram.points.push_back({1, birth, sx.value});
  }

  // Essentials: one dim-0 class per surviving component, one dim-1 class per
  // unkilled creator edge.
  std::map<int, double> root_births;
  for (int v = 0; v < k.vertex_count(); ++v) {
    const int r = uf.find(v);
    auto it = root_births.find(r);
    if (it == root_births.end() || comp_birth[v] < it->second) {
      root_births[r] = std::min(comp_birth[v],
                                it == root_births.end() ? kInf : it->second);
    }
  }
  for (const auto& [root, birth] : root_births) {
    diagram.points.push_back({0, birth, kInf});
  }
  for (int pos = 0; pos < m; ++pos) {
    if (edge_creates[pos] && !edge_killed[pos]) {
      diagram.points.push_back({1, filt.ordered[pos].value, kInf});
    }
  }
  diagram.sort();
  return diagram;
}

// Euler characteristic function chi(t) = #V - #E + #T of the lower-level set.
inline StepFunction euler_characteristic_function(const SimplicialComplex2D& k,
                                                  Direction s) {
  const Filtration filt = lower_star_filtration(k, s);
  std::vector<std::pair<double, int>> events;
  events.reserve(filt.ordered.size());
  for (const FiltSimplex& sx : filt.ordered) {
    events.push_back({sx.value, sx.dim == 1 ? -1 : 1});
  }
  return StepFunction::from_deltas(std::move(events));
}

// Betti functions by rank counting from the persistence diagram:
// beta_i(t) = #{points of dim i with birth <= t < death}.
inline std::pair<StepFunction, StepFunction> betti_functions(
    const SimplicialComplex2D& k, Direction s) {
  const PersistenceDiagram d = persistence_diagram(k, s);
  std::vector<std::pair<double, int>> ev0, ev1;
  for (const PdPoint& p : d.points) {
    auto& ev = p.dim == 0 ? ev0 : ev1;
    ev.push_back({p.birth, 1});
    if (!p.essential()) ev.push_back({p.death, -1});
  }
  return {StepFunction::from_deltas(std::move(ev0)),
          StepFunction::from_deltas(std::move(ev1))};
}

namespace detail {

// Kuhn's augmenting-path bipartite matching on an adjacency list.
class BipartiteMatcher {
 public:
  BipartiteMatcher(int n_left, int n_right)
      : adj_(n_left), match_right_(n_right, -1) {}

  void add_edge(int l, int r) { adj_[l].push_back(r); }

  int max_matching() {
    int matched = 0;
    for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
      std::vector<bool> seen(match_right_.size(), false);
      if (try_augment(l, seen)) ++matched;
    }
    return matched;
  }

 private:
  bool try_augment(int l, std::vector<bool>& seen) {
    for (int r : adj_[l]) {
      if (seen[r]) continue;
      seen[r] = true;
      if (match_right_[r] == -1 || try_augment(match_right_[r], seen)) {
        match_right_[r] = l;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> match_right_;
};

// Feasibility of a perfect matching at radius r for the finite points of one
// dimension, with diagonal proxies on both sides.
inline bool bottleneck_feasible(const std::vector<PdPoint>& a,
                                const std::vector<PdPoint>& b, double r) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  const int n = na + nb;
  BipartiteMatcher matcher(n, n);
  // Left: a points then nb diagonal proxies. Right: b points then na proxies.
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      const double cost = std::max(std::abs(a[i].birth - b[j].birth),
                                   std::abs(a[i].death - b[j].death));
      if (cost <= r) matcher.add_edge(i, j);
    }
    if (a[i].diagonal_cost() <= r) {
      for (int j = 0; j < na; ++j) matcher.add_edge(i, nb + j);
    }
  }
  for (int i = 0; i < nb; ++i) {
    if (b[i].diagonal_cost() <= r) {
      for (int j = 0; j < nb; ++j) matcher.add_edge(na + j, i);
    }
  }
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < na; ++j) matcher.add_edge(na + i, nb + j);
  }
  return matcher.max_matching() == n;
}

inline double bottleneck_finite(const std::vector<PdPoint>& a,
                                const std::vector<PdPoint>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<double> candidates = {0.0};
  for (const PdPoint& p : a) candidates.push_back(p.diagonal_cost());
  for (const PdPoint& p : b) candidates.push_back(p.diagonal_cost());
  for (const PdPoint& p : a) {
    for (const PdPoint& q : b) {
      candidates.push_back(std::max(std::abs(p.birth - q.birth),
                                    std::abs(p.death - q.death)));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  // Binary search for the smallest feasible candidate radius.
  int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (bottleneck_feasible(a, b, candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return candidates[lo];
}

// Essential classes match only within their dimension; sorted-order matching
// of births is optimal for the max |birth - birth'| objective.
inline double bottleneck_essential(std::vector<double> a,
                                   std::vector<double> b) {
  if (a.size() != b.size()) return kInf;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r = std::max(r, std::abs(a[i] - b[i]));
  }
  return r;
}

}  // namespace detail

// Exact bottleneck distance between graded diagrams. Mismatched essential
// counts yield infinity.
inline double bottleneck_distance(const PersistenceDiagram& d1,
                                  const PersistenceDiagram& d2) {
  double result = 0;
  for (int dim = 0; dim <= 1; ++dim) {
    std::vector<PdPoint> f1, f2;
    std::vector<double> e1, e2;
    for (const PdPoint& p : d1.points) {
      if (p.dim != dim) continue;
      if (p.essential()) e1.push_back(p.birth);
      else f1.push_back(p);
    }
    for (const PdPoint& p : d2.points) {
      if (p.dim != dim) continue;
      if (p.essential()) e2.push_back(p.birth);
      else f2.push_back(p);
    }
    result = std::max(result, detail::bottleneck_essential(e1, e2));
    if (std::isinf(result)) return kInf;
    result = std::max(result, detail::bottleneck_finite(f1, f2));
  }
  return result;
}

// Exact integral of |f - g| over the merged breakpoint partition. Different
// final values make the integral diverge; infinity is returned.
inline double ecf_l1_distance(const StepFunction& f, const StepFunction& g) {
  if (f.final_value() != g.final_value()) return kInf;
  std::vector<double> ts;
  for (const auto& [h, v] : f.breakpoints) ts.push_back(h);
  for (const auto& [h, v] : g.breakpoints) ts.push_back(h);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const int diff = f.value_at(ts[i]) - g.value_at(ts[i]);
    total += std::abs(diff) * (ts[i + 1] - ts[i]);
  }
  return total;
}

inline bool descriptor_equal(const PersistenceDiagram& a,
                             const PersistenceDiagram& b,
                             double tol = kHeightTol) {
  if (a.points.size() != b.points.size()) return false;
  PersistenceDiagram sa = a, sb = b;
  sa.sort();
  sb.sort();
  for (std::size_t i = 0; i < sa.points.size(); ++i) {
    const PdPoint& p = sa.points[i];
    const PdPoint& q = sb.points[i];
    if (p.dim != q.dim) return false;
    if (std::abs(p.birth - q.birth) > tol) return false;
    if (p.essential() != q.essential()) return false;
    if (!p.essential() && std::abs(p.death - q.death) > tol) return false;
  }
  return true;
}

inline bool descriptor_equal(const StepFunction& f, const StepFunction& g,
                             double tol = kHeightTol) {
  if (f.breakpoints.size() != g.breakpoints.size()) return false;
  for (std::size_t i = 0; i < f.breakpoints.size(); ++i) {
    if (std::abs(f.breakpoints[i].first - g.breakpoints[i].first) > tol) {
      return false;
    }
    if (f.breakpoints[i].second != g.breakpoints[i].second) return false;
  }
  return true;
}

// JSON serialization; infinite deaths use the "inf" sentinel.
inline nlohmann::json to_json(const PersistenceDiagram& d) {
  nlohmann::json points = nlohmann::json::array();
  for (const PdPoint& p : d.points) {
    nlohmann::json j{{"dim", p.dim}, {"birth", p.birth}};
    if (p.essential()) j["death"] = "inf";
    else j["death"] = p.death;
    points.push_back(j);
  }
  return nlohmann::json{{"points", points}};
}

inline nlohmann::json to_json(const StepFunction& f) {
  nlohmann::json bps = nlohmann::json::array();
  for (const auto& [h, v] : f.breakpoints) {
    bps.push_back(nlohmann::json::array({h, v}));
  }
  return nlohmann::json{{"breakpoints", bps}};
}

inline PersistenceDiagram diagram_from_json(const nlohmann::json& j) {
  PersistenceDiagram d;
  for (const auto& p : j.at("points")) {
    PdPoint pt;
    pt.dim = p.at("dim").get<int>();
    pt.birth = p.at("birth").get<double>();
    if (p.at("death").is_string()) pt.death = kInf;
    else pt.death = p.at("death").get<double>();
    d.points.push_back(pt);
  }
  return d;
}

inline StepFunction step_function_from_json(const nlohmann::json& j) {
  StepFunction f;
  for (const auto& bp : j.at("breakpoints")) {
    f.breakpoints.push_back({bp.at(0).get<double>(), bp.at(1).get<int>()});
  }
  return f;
}

}  // namespace strataudit
