#pragma once
// Experiment runners: min-stratum scaling with log-log regression,
// uniform-direction under-sampling, the linear lower bound, the lost-vertex
// bound, and a small deterministic SVG scatter renderer.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "strataudit/constructions.hpp"
#include "strataudit/descriptors.hpp"
#include "strataudit/ingest.hpp"
#include "strataudit/sampling.hpp"
#include "strataudit/stratification.hpp"

namespace strataudit {

struct RegressionFit {
  double intercept = 0;
  double slope = 0;
  double r_squared = 0;
  int n_points = 0;
};

// Ordinary least squares of log(m) on log(n0); natural logarithms.
inline RegressionFit loglog_fit(
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    throw std::invalid_argument("loglog_fit: need >= 2 points");
  }
  std::vector<double> xs, ys;
  for (const auto& [n0, m] : points) {
    if (!(n0 > 0) || !(m > 0)) {
      throw std::invalid_argument("loglog_fit: values must be positive");
    }
    xs.push_back(std::log(n0));
    ys.push_back(std::log(m));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) {
    throw std::invalid_argument("loglog_fit: need >= 2 distinct n0 values");
  }
  RegressionFit fit;
  fit.n_points = static_cast<int>(xs.size());
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = fit.intercept + fit.slope * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  fit.r_squared = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

// Standalone SVG log-log scatter with an optional fit line. Deterministic
// bytes for fixed input.
inline std::string svg_scatter(
    const std::vector<std::pair<double, double>>& points,
    const RegressionFit* fit, const std::string& x_label,
    const std::string& y_label) {
  if (points.empty()) throw std::invalid_argument("svg_scatter: no points");
  const int w = 640, h = 480, margin = 56;
  double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
  for (const auto& [x, y] : points) {
    const double lx = std::log10(x), ly = std::log10(y);
    xmin = std::min(xmin, lx);
    xmax = std::max(xmax, lx);
    ymin = std::min(ymin, ly);
    ymax = std::max(ymax, ly);
  }
  if (xmax - xmin < 1e-9) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-9) { ymin -= 0.5; ymax += 0.5; }
  auto px = [&](double lx) {
    return margin + (lx - xmin) / (xmax - xmin) * (w - 2 * margin);
  };
  auto py = [&](double ly) {
    return h - margin - (ly - ymin) / (ymax - ymin) * (h - 2 * margin);
  };
  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                w, h, w, h);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                margin, margin, w - 2 * margin, h - 2 * margin);
  svg += buf;
  // Axis tick labels at the corners of the data range (log10 values).
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" font-size=\"12\">%.3g</text>\n",
                margin, h - margin + 16, xmin);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" font-size=\"12\">%.3g</text>\n",
                w - margin - 20, h - margin + 16, xmax);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" font-size=\"12\">%.3g</text>\n",
                4, h - margin, ymin);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" font-size=\"12\">%.3g</text>\n",
                4, margin + 6, ymax);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%d\" y=\"%d\" font-size=\"13\">log10 %s</text>\n",
                w / 2 - 40, h - 12, x_label.c_str());
  svg += buf;
  std::snprintf(
      buf, sizeof(buf),
      "<text x=\"14\" y=\"%d\" font-size=\"13\" transform=\"rotate(-90 14 "
      "%d)\">log10 %s</text>\n",
      h / 2, h / 2, y_label.c_str());
  svg += buf;
  for (const auto& [x, y] : points) {
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"#1f77b4\" "
                  "fill-opacity=\"0.6\"/>\n",
                  px(std::log10(x)), py(std::log10(y)));
    svg += buf;
  }
  if (fit) {
    // Fit computed in natural logs; convert to log10 for plotting.
    const double ln10 = std::log(10.0);
    auto fit_ly = [&](double lx) {
      return (fit->intercept + fit->slope * lx * ln10) / ln10;
    };
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"#d62728\" stroke-width=\"1.5\"/>\n",
                  px(xmin), py(fit_ly(xmin)), px(xmax), py(fit_ly(xmax)));
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

// Parsed experiment configuration; every field has a desk-scale default so a
// config file only needs to override what it cares about.
struct ExperimentConfig {
  std::string output_dir = ".";
  std::uint64_t seed = 1;
  std::string corpus_dir;  // directory of .gsc files, optional
  std::vector<int> cloud_sizes = {3, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  int clouds_per_size = 100;
  std::vector<int> ks = {4, 8, 16, 32, 64};
  int random_seeds = 20;
  std::vector<int> n_list = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  int triple_count = 100;
  int resolution = 10000;
  int cycle_corpus_size = 20;
  int cycle_vertices = 8;

  static ExperimentConfig from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("output_dir")) c.output_dir = j["output_dir"];
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("corpus_dir")) c.corpus_dir = j["corpus_dir"];
    if (j.contains("cloud_sizes")) {
      c.cloud_sizes = j["cloud_sizes"].get<std::vector<int>>();
    }
    if (j.contains("clouds_per_size")) c.clouds_per_size = j["clouds_per_size"];
    if (j.contains("ks")) c.ks = j["ks"].get<std::vector<int>>();
    if (j.contains("random_seeds")) c.random_seeds = j["random_seeds"];
    if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<int>>();
    if (j.contains("triple_count")) c.triple_count = j["triple_count"];
    if (j.contains("resolution")) c.resolution = j["resolution"];
    if (j.contains("cycle_corpus_size")) {
      c.cycle_corpus_size = j["cycle_corpus_size"];
    }
    if (j.contains("cycle_vertices")) c.cycle_vertices = j["cycle_vertices"];
    return c;
  }
};

struct MinStratumRow {
  std::string id;
  int n0 = 0;
  double min_stratum = 0;
};

struct MinStratumResult {
  std::vector<MinStratumRow> rows;
  RegressionFit fit;
  std::string csv;
  std::string svg;
  int small_stratum_warnings = 0;  // rows with min stratum below 1e-5
};

// Smallest-stratum scaling: per complex (id, n0, min_stratum), a log-log
// fit, and a scatter plot. Without a corpus directory the randpts corpus is
// regenerated from the configured sizes and seed.
inline MinStratumResult experiment_min_stratum(
    const ExperimentConfig& cfg,
    const std::vector<std::pair<std::string, std::vector<Point2>>>& corpus) {
  if (corpus.empty()) {
    throw std::invalid_argument("experiment_min_stratum: empty corpus");
  }
  MinStratumResult result;
  result.csv = "id,n0,min_stratum\n";
  char buf[160];
  std::vector<std::pair<double, double>> points;
  for (const auto& [id, vertices] : corpus) {
    const double m = min_stratum(coarse_stratification(vertices));
    result.rows.push_back({id, static_cast<int>(vertices.size()), m});
    if (m < 1e-5) ++result.small_stratum_warnings;
    std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g\n", id.c_str(),
                  vertices.size(), m);
    result.csv += buf;
    points.push_back({static_cast<double>(vertices.size()), m});
  }
  result.fit = loglog_fit(points);
  result.svg = svg_scatter(points, &result.fit, "n0", "min stratum");
  return result;
}

inline std::vector<std::pair<std::string, std::vector<Point2>>>
randpts_corpus(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::vector<Point2>>> corpus;
  std::uint64_t seq = 0;
  for (int size : cfg.cloud_sizes) {
    for (int c = 0; c < cfg.clouds_per_size; ++c) {
      const std::uint64_t seed = cfg.seed * 1000003ull + seq++;
      corpus.push_back({"randpts_" + std::to_string(size) + "_" +
                            std::to_string(c),
                        random_cloud(size, seed)});
    }
  }
  return corpus;
}

// Under-sampling experiment: missed observing regions per complex, scheme,
// k, and seed. Random direction sets are drawn nested (prefixes of one draw
// per seed) so missed counts are antitone in k per seed.
inline std::string experiment_uniform_miss(
    const ExperimentConfig& cfg,
    const std::vector<std::pair<std::string, SimplicialComplex2D>>& corpus) {
  std::string csv = "complex_id,k_or_eps,scheme,seed,n0,missed_count,missed_fraction\n";
  char buf[256];
  const int kmax = *std::max_element(cfg.ks.begin(), cfg.ks.end());
  for (const auto& [id, k] : corpus) {
    const std::vector<ObservingRegion> regions = all_observing_regions(k);
    const int n0 = k.vertex_count();
    for (int kk : cfg.ks) {
      const auto missed = missed_vertices(regions, uniform_grid(kk, 0.0));
      std::snprintf(buf, sizeof(buf), "%s,%d,grid,0,%d,%zu,%.17g\n",
                    id.c_str(), kk, n0, missed.size(),
                    missed.size() / double(n0));
      csv += buf;
    }
    for (int seed = 0; seed < cfg.random_seeds; ++seed) {
      const DirectionSet pool =
          uniform_random(kmax, cfg.seed * 7919ull + seed);
      for (int kk : cfg.ks) {
        DirectionSet prefix;
        prefix.directions.assign(pool.directions.begin(),
                                 pool.directions.begin() + kk);
        const auto missed = missed_vertices(regions, prefix);
        std::snprintf(buf, sizeof(buf), "%s,%d,random,%d,%d,%zu,%.17g\n",
                      id.c_str(), kk, seed, n0, missed.size(),
                      missed.size() / double(n0));
        csv += buf;
      }
    }
  }
  return csv;
}

// Linear-lower-bound experiment: per n, the measured slope gap, epsilon,
// disjointness verdict, and the implied direction-count bound.
inline nlohmann::json experiment_lower_bound(const ExperimentConfig& cfg) {
  nlohmann::json report = nlohmann::json::array();
  for (int n : cfg.n_list) {
    const LowerBoundComplex c = lower_bound_complex(n);
    report.push_back({{"n", n},
                      {"delta_star", c.delta_star},
                      {"epsilon_used", c.epsilon_used},
                      {"disjoint", c.disjoint},
                      {"min_directions_bound", n}});
  }
  return report;
}

// Lost-vertex experiment: predicted vs computed Hausdorff distance, and
// descriptor-equality verdicts off and on the observing region of v.
inline nlohmann::json experiment_lost_vertex(const ExperimentConfig& cfg) {
  nlohmann::json report = nlohmann::json::array();
  auto run_triple = [&](Point2 u, Point2 v, Point2 w, const std::string& id) {
    const LostVertexPair pair = lost_vertex_pair(u, v, w);
    const HausdorffResult haus =
        hausdorff_distance(pair.k, pair.k_prime, cfg.resolution);

    const ObservingRegion obs = observing_region(pair.k, pair.v_id);
    const ArcSet off_region = arcset_complement(obs.region);
    // 64 directions in the complement, taken uniformly per arc.
    std::vector<Direction> off_dirs;
    const double total = off_region.measure();
    for (const Arc& a : off_region.arcs()) {
      const int count =
          std::max(1, static_cast<int>(std::round(64 * a.length / total)));
      for (int i = 0; i < count && off_dirs.size() < 64; ++i) {
        off_dirs.push_back(Direction{a.start + a.length * (i + 0.5) / count});
      }
    }
    const Stratification strat_k = coarse_stratification(pair.k.vertices);
    const Stratification strat_kp =
        coarse_stratification(pair.k_prime.vertices);
    bool equal_off = true;
    for (const Direction& d : off_dirs) {
      const Direction s1 = nondegenerate_nearby(strat_k, d);
      if (obs.region.contains(s1)) continue;
      const Direction s2 = nondegenerate_nearby(strat_kp, s1);
      if (s1.angle != s2.angle) continue;  // skip directions near criticals
      if (!descriptor_equal(persistence_diagram(pair.k, s1),
                            persistence_diagram(pair.k_prime, s1)) ||
          !descriptor_equal(euler_characteristic_function(pair.k, s1),
                            euler_characteristic_function(pair.k_prime, s1))) {
        equal_off = false;
      }
    }
    // Midpoint of the largest arc of Obs(v).
    double best_len = -1;
    Direction on_dir;
    for (const Arc& a : obs.region.arcs()) {
      if (a.length > best_len) {
        best_len = a.length;
        on_dir = Direction{a.start + a.length / 2};
      }
    }
    const Direction s_on = nondegenerate_nearby(strat_k, on_dir);
    const Direction s_on2 = nondegenerate_nearby(strat_kp, s_on);
    const bool unequal_on =
        !descriptor_equal(persistence_diagram(pair.k, s_on),
                          persistence_diagram(pair.k_prime, s_on2)) &&
        !descriptor_equal(euler_characteristic_function(pair.k, s_on),
                          euler_characteristic_function(pair.k_prime, s_on2));
    report.push_back({{"id", id},
                      {"theta", pair.theta},
                      {"predicted_hausdorff", pair.predicted_hausdorff},
                      {"computed_hausdorff", haus.distance},
                      {"hausdorff_error_bound", haus.error_bound},
                      {"descriptors_equal_off_region", equal_off},
                      {"descriptors_unequal_on_region", unequal_on}});
  };
  run_triple({-1, 0}, {0, 1}, {1, 0}, "canonical");
  for (int i = 0; i < cfg.triple_count; ++i) {
    const auto [u, v, w] = random_isosceles_triple(cfg.seed * 104729ull + i);
    run_triple(u, v, w, "random_" + std::to_string(i));
  }
  return report;
}

}  // namespace strataudit
