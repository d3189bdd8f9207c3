#pragma once
// Direction-set construction (eps-nets, grids, random), under-sampling
// analysis, discrete transforms, and the corpus comparison metric.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "strataudit/complex.hpp"
#include "strataudit/descriptors.hpp"
#include "strataudit/geometry.hpp"
#include "strataudit/stratification.hpp"

namespace strataudit {

enum class DescriptorType { persistence_diagram, euler_characteristic };
enum class DeltaKind { ecf_l1, bottleneck };

struct DirectionSet {
  std::vector<Direction> directions;  // sorted, deduplicated
  std::string provenance;

  void canonicalize() {
    std::sort(directions.begin(), directions.end(),
              [](Direction a, Direction b) { return a.angle < b.angle; });
    directions.erase(std::unique(directions.begin(), directions.end(),
                                 [](Direction a, Direction b) {
                                   return a.angle == b.angle;
                                 }),
                     directions.end());
  }
};

// Uniform grid with spacing 2pi/k, k = ceil(2pi/eps): every open arc of
// length > eps contains a member.
inline DirectionSet epsilon_net(double eps) {
  if (!(eps > 0) || eps > kTau) {
    throw std::invalid_argument("epsilon_net: need 0 < eps <= 2pi");
  }
  const int k = static_cast<int>(std::ceil(kTau / eps - 1e-9));
  DirectionSet s;
  s.provenance = "eps-net " + std::to_string(eps);
  for (int i = 0; i < k; ++i) s.directions.push_back(Direction{kTau * i / k});
  s.canonicalize();
  return s;
}

inline DirectionSet uniform_grid(int k, double phase) {
  if (k < 1) throw std::invalid_argument("uniform_grid: k must be >= 1");
  DirectionSet s;
  s.provenance = "grid " + std::to_string(k);
  for (int i = 0; i < k; ++i) {
    s.directions.push_back(Direction{phase + kTau * i / k});
  }
  s.canonicalize();
  return s;
}

inline DirectionSet uniform_random(int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("uniform_random: k must be >= 1");
  Rng rng(seed);
  DirectionSet s;
  s.provenance = "random " + std::to_string(k) + " seed " +
                 std::to_string(seed);
  for (int i = 0; i < k; ++i) {
    s.directions.push_back(Direction{rng.uniform(0, kTau)});
  }
  s.canonicalize();
  return s;
}

// Vertices whose exact observing region contains no element of delta.
inline std::vector<int> missed_vertices(const SimplicialComplex2D& k,
                                        const DirectionSet& delta) {
  const std::vector<ObservingRegion> regions = all_observing_regions(k);
  std::vector<int> missed;
  for (const ObservingRegion& r : regions) {
    bool hit = false;
    for (const Direction& d : delta.directions) {
      if (r.region.contains(d)) {
        hit = true;
        break;
      }
    }
    if (!hit) missed.push_back(r.vertex);
  }
  return missed;
}

// Same, against precomputed regions (the sweep dominates the cost).
inline std::vector<int> missed_vertices(
    const std::vector<ObservingRegion>& regions, const DirectionSet& delta) {
  std::vector<int> missed;
  for (const ObservingRegion& r : regions) {
    bool hit = false;
    for (const Direction& d : delta.directions) {
      if (r.region.contains(d)) {
        hit = true;
        break;
      }
    }
    if (!hit) missed.push_back(r.vertex);
  }
  return missed;
}

// A direction in the interior of the cell containing s; s itself when it is
// already non-degenerate. Degenerate members are moved to the containing
// cell's midpoint (the cell starting at the critical hit).
inline Direction nondegenerate_nearby(const Stratification& strat,
                                      Direction s, bool* nudged = nullptr) {
  for (const StratumCell& c : strat.cells) {
    const double rel = normalize_angle(s.angle - c.start);
    if (rel > kAngleTol && rel < c.length - kAngleTol) {
      if (nudged) *nudged = false;
      return s;
    }
  }
  // s sits on (or within tolerance of) a critical; take the next cell.
  for (const StratumCell& c : strat.cells) {
    if (std::abs(normalize_angle(s.angle - c.start)) <= kAngleTol ||
        std::abs(normalize_angle(c.start - s.angle)) <= kAngleTol) {
      if (nudged) *nudged = true;
      return Direction{c.midpoint()};
    }
  }
  if (nudged) *nudged = true;
  return Direction{strat.cells.front().midpoint()};
}

struct DirectionalDescriptor {
  Direction direction;
  PersistenceDiagram pd;   // populated for type persistence_diagram
  StepFunction ecf;        // populated for type euler_characteristic
};

struct DiscreteTransform {
  DescriptorType type = DescriptorType::euler_characteristic;
  std::vector<DirectionalDescriptor> pairs;
  int nudge_count = 0;  // degenerate members moved to cell midpoints
};

inline DiscreteTransform discrete_transform(const SimplicialComplex2D& k,
                                            const DirectionSet& delta,
                                            DescriptorType type) {
  DiscreteTransform t;
  t.type = type;
  if (delta.directions.empty()) return t;
  const Stratification strat = coarse_stratification(k.vertices);
  for (const Direction& raw : delta.directions) {
    bool nudged = false;
    const Direction s = nondegenerate_nearby(strat, raw, &nudged);
    if (nudged) ++t.nudge_count;
    DirectionalDescriptor dd;
    dd.direction = raw;  // keep the requested label
    if (type == DescriptorType::persistence_diagram) {
      dd.pd = persistence_diagram(k, s);
    } else {
      dd.ecf = euler_characteristic_function(k, s);
    }
    t.pairs.push_back(std::move(dd));
  }
  return t;
}

// eps = min over the corpus of the minimal stratum size; returns the
// corresponding eps-net.
inline DirectionSet corpus_direction_set(
    const std::vector<SimplicialComplex2D>& corpus) {
  if (corpus.empty()) {
    throw std::invalid_argument("corpus_direction_set: empty corpus");
  }
  double eps = kTau;
  for (const SimplicialComplex2D& k : corpus) {
    eps = std::min(eps, min_stratum(coarse_stratification(k.vertices)));
  }
  return epsilon_net(eps);
}

// Sum over shared directions of the per-direction descriptor distance.
inline double transform_distance(const DiscreteTransform& a,
                                 const DiscreteTransform& b, DeltaKind delta) {
  if (a.pairs.size() != b.pairs.size()) {
    throw std::invalid_argument("transform_distance: direction sets differ");
  }
  double total = 0;
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    const double d = delta == DeltaKind::bottleneck
                         ? bottleneck_distance(a.pairs[i].pd, b.pairs[i].pd)
                         : ecf_l1_distance(a.pairs[i].ecf, b.pairs[i].ecf);
    if (std::isinf(d)) return kInf;
    total += d;
  }
  return total;
}

struct CorpusDistanceResult {
  double value = 0;
  // The metric's positivity guarantee needs p to hit every cell of both
  // stratifications; false here downgrades the result to a pseudometric.
  bool p_faithful = true;
};

inline CorpusDistanceResult corpus_distance(const SimplicialComplex2D& k1,
                                            const SimplicialComplex2D& k2,
                                            const DirectionSet& p,
                                            DeltaKind delta,
                                            DescriptorType type) {
  CorpusDistanceResult result;
  const DescriptorType t =
      delta == DeltaKind::bottleneck ? DescriptorType::persistence_diagram
                                     : type;
  result.p_faithful =
      hits_all_strata(coarse_stratification(k1.vertices), p.directions)
          .empty() &&
      hits_all_strata(coarse_stratification(k2.vertices), p.directions)
          .empty();
  const DiscreteTransform a = discrete_transform(k1, p, t);
  const DiscreteTransform b = discrete_transform(k2, p, t);
  result.value = transform_distance(a, b, delta);
  return result;
}

// Greedy hitting set over the observing regions, for reporting only: picks
// cell midpoints covering the most still-unhit vertices first.
inline std::vector<Direction> greedy_observing_cover(
    const SimplicialComplex2D& k) {
  const Stratification strat = coarse_stratification(k.vertices);
  std::vector<std::vector<int>> cell_observes(strat.cells.size());
  for (std::size_t i = 0; i < strat.cells.size(); ++i) {
    for (int v : observed_vertices(k, Direction{strat.cells[i].midpoint()})) {
      cell_observes[i].push_back(v);
    }
  }
  std::vector<bool> covered(k.vertex_count(), false);
  std::vector<Direction> cover;
  while (true) {
    int best = -1, best_gain = 0;
    for (std::size_t i = 0; i < strat.cells.size(); ++i) {
      int gain = 0;
      for (int v : cell_observes[i]) gain += covered[v] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    cover.push_back(Direction{strat.cells[best].midpoint()});
    for (int v : cell_observes[best]) covered[v] = true;
  }
  return cover;
}

// Newline-delimited radians.
inline std::string direction_set_to_text(const DirectionSet& s) {
  std::string out;
  char buf[64];
  for (const Direction& d : s.directions) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", d.angle);
    out += buf;
  }
  return out;
}

inline DirectionSet direction_set_from_text(const std::string& text) {
  DirectionSet s;
  s.provenance = "explicit";
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line[0] == '#') continue;
    s.directions.push_back(Direction{std::stod(line)});
  }
  s.canonicalize();
  return s;
}

}  // namespace strataudit
