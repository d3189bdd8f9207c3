// strataudit: directional topological descriptors of planar simplicial
// complexes, stratification and observing-region reports, direction sampling,
// and the experiment runners.
//
// Exit codes: 0 success, 2 validation rejection, 1 any other error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "strataudit/constructions.hpp"
#include "strataudit/descriptors.hpp"
#include "strataudit/experiments.hpp"
#include "strataudit/ingest.hpp"
#include "strataudit/sampling.hpp"
#include "strataudit/stratification.hpp"

using namespace strataudit;

namespace {

struct validation_rejection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << bytes;
}

SimplicialComplex2D load_complex(const std::string& path) {
  SimplicialComplex2D k = read_gsc(slurp(path));
  const ValidationReport report = validate(k);
  if (!report.valid()) {
    std::string what = path + ": complex fails validation:";
    if (!report.crossing_edges.empty()) what += " crossing edges;";
    if (!report.vertex_on_edge.empty()) what += " vertex on edge interior;";
    if (!report.general_position.ok()) what += " general position violated;";
    throw validation_rejection(what);
  }
  return k;
}

ExperimentConfig load_config(const std::string& path, std::uint64_t seed,
                             const std::string& output_dir) {
  ExperimentConfig cfg;
  if (!path.empty()) {
    cfg = ExperimentConfig::from_json(nlohmann::json::parse(slurp(path)));
  }
  if (seed != 0) cfg.seed = seed;
  if (!output_dir.empty()) cfg.output_dir = output_dir;
  return cfg;
}

nlohmann::json descriptor_report(const SimplicialComplex2D& k, double angle) {
  const Stratification strat = coarse_stratification(k.vertices);
  bool nudged = false;
  const Direction s = nondegenerate_nearby(strat, Direction{angle}, &nudged);
  const auto [b0, b1] = betti_functions(k, s);
  return nlohmann::json{
      {"direction", angle},
      {"evaluated_direction", s.angle},
      {"nudged", nudged},
      {"persistence_diagram", to_json(persistence_diagram(k, s))},
      {"euler_characteristic", to_json(euler_characteristic_function(k, s))},
      {"betti_0", to_json(b0)},
      {"betti_1", to_json(b1)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directional descriptor audit for planar simplicial complexes"};
  app.require_subcommand(1);

  std::string input, input2, output, config_path, directions_path;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", input, "input file");
    if (needs_input) in->required();
    cmd->add_option("--output", output, "output file ('-' for stdout)");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--config", config_path, "JSON experiment config");
  };

  auto* stratify = app.add_subcommand(
      "stratify", "coarse stratification of the direction circle (CSV)");
  add_common(stratify, true);

  auto* observe = app.add_subcommand(
      "observe", "per-vertex observing regions (CSV)");
  add_common(observe, true);

  auto* descriptors = app.add_subcommand(
      "descriptors", "descriptors in one direction (JSON)");
  add_common(descriptors, true);
  double direction = 0.0;
  descriptors->add_option("--direction", direction,
                          "direction in radians (default 0)");

  auto* sample = app.add_subcommand(
      "sample", "emit a direction set (newline-delimited radians)");
  add_common(sample, false);
  std::string scheme = "eps-net";
  double eps = 0.0;
  int sample_k = 0;
  double phase = 0.0;
  sample->add_option("--scheme", scheme, "eps-net | grid | random | corpus");
  sample->add_option("--eps", eps, "arc length bound for eps-net");
  sample->add_option("--k", sample_k, "direction count for grid/random");
  sample->add_option("--phase", phase, "grid phase in radians");

  auto* ingest = app.add_subcommand(
      "ingest", "PNM image -> contour -> cycle graph (.gsc)");
  add_common(ingest, true);
  double level = 0.002;
  ingest->add_option("--level", level,
                     "simplification level (fraction of arc length)");

  auto* compare = app.add_subcommand(
      "compare", "corpus distance between two complexes (JSON)");
  add_common(compare, true);
  compare->add_option("--input2", input2, "second complex")->required();
  compare->add_option("--directions", directions_path,
                      "direction set file (default: corpus eps-net)");
  std::string delta_name = "ecf-l1";
  compare->add_option("--delta", delta_name, "ecf-l1 | bottleneck");

  auto* generate = app.add_subcommand(
      "generate", "write a worked-example complex (.gsc)");
  add_common(generate, false);
  std::string kind = "triangle";
  int gen_n = 3;
  generate->add_option("kind", kind,
                       "triangle | lower-bound | lost-vertex | cycle | cloud");
  generate->add_option("--n", gen_n, "size parameter");

  auto* experiment = app.add_subcommand("experiment", "run an experiment");
  add_common(experiment, false);
  std::string exp_name;
  experiment
      ->add_option("name", exp_name,
                   "min-stratum | uniform-miss | lower-bound | lost-vertex")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stratify) {
      spill(output, strata_csv(coarse_stratification(load_complex(input).vertices)));
    } else if (*observe) {
      spill(output, regions_csv(all_observing_regions(load_complex(input))));
    } else if (*descriptors) {
      spill(output,
            descriptor_report(load_complex(input), direction).dump(2) + "\n");
    } else if (*sample) {
      DirectionSet set;
      if (scheme == "eps-net") {
        if (!(eps > 0)) throw std::runtime_error("--eps required for eps-net");
        set = epsilon_net(eps);
      } else if (scheme == "grid") {
        set = uniform_grid(sample_k, phase);
      } else if (scheme == "random") {
        set = uniform_random(sample_k, seed);
      } else if (scheme == "corpus") {
        set = corpus_direction_set({load_complex(input)});
      } else {
        throw std::runtime_error("unknown scheme '" + scheme + "'");
      }
      spill(output, direction_set_to_text(set));
    } else if (*ingest) {
      const GrayImage img = parse_pnm(slurp(input));
      const PipelineResult r = contour_pipeline(img, level, seed);
      if (!r.ok()) {
        throw validation_rejection(std::string("contour rejected: ") +
                                   to_string(r.reason));
      }
      spill(output, write_gsc(r.complex));
    } else if (*compare) {
      const SimplicialComplex2D a = load_complex(input);
      const SimplicialComplex2D b = load_complex(input2);
      DirectionSet p = directions_path.empty()
                           ? corpus_direction_set({a, b})
                           : direction_set_from_text(slurp(directions_path));
      DeltaKind delta;
      if (delta_name == "ecf-l1") {
        delta = DeltaKind::ecf_l1;
      } else if (delta_name == "bottleneck") {
        delta = DeltaKind::bottleneck;
      } else {
        throw std::runtime_error("unknown delta '" + delta_name + "'");
      }
      const CorpusDistanceResult r = corpus_distance(
          a, b, p, delta, DescriptorType::euler_characteristic);
      const nlohmann::json report{
          {"distance", std::isinf(r.value) ? nlohmann::json("inf")
                                           : nlohmann::json(r.value)},
          {"delta", delta_name},
          {"directions", p.directions.size()},
          {"p_faithful", r.p_faithful}};
      spill(output, report.dump(2) + "\n");
    } else if (*generate) {
      if (kind == "triangle") {
        spill(output, write_gsc(example_triangle()));
      } else if (kind == "lower-bound") {
        const LowerBoundComplex lb = lower_bound_complex(gen_n);
        spill(output, write_gsc(lb.complex));
        std::cerr << lower_bound_report(lb).dump(2) << "\n";
      } else if (kind == "lost-vertex") {
        const LostVertexPair p = lost_vertex_pair({-1, 0}, {0, 1}, {1, 0});
        spill(output, write_gsc(p.k));
        if (!output.empty() && output != "-") {
          spill(output + ".prime", write_gsc(p.k_prime));
        }
      } else if (kind == "cycle") {
        spill(output, write_gsc(random_cycle_graph(gen_n, seed)));
      } else if (kind == "cloud") {
        SimplicialComplex2D k;
        k.vertices = random_cloud(gen_n, seed);
        spill(output, write_gsc(k));
      } else {
        throw std::runtime_error("unknown kind '" + kind + "'");
      }
    } else if (*experiment) {
      const ExperimentConfig cfg = load_config(config_path, seed, output);
      const std::string dir = cfg.output_dir.empty() ? "." : cfg.output_dir;
      if (exp_name == "min-stratum") {
        std::vector<std::pair<std::string, std::vector<Point2>>> corpus;
        if (!cfg.corpus_dir.empty()) {
          throw std::runtime_error(
              "corpus_dir ingestion: pass .gsc files through `stratify` "
              "individually, or leave corpus_dir empty to use randpts");
        }
        corpus = randpts_corpus(cfg);
        const MinStratumResult r = experiment_min_stratum(cfg, corpus);
        spill(dir + "/min_stratum.csv", r.csv);
        spill(dir + "/min_stratum.svg", r.svg);
        const nlohmann::json fit{{"intercept", r.fit.intercept},
                                 {"slope", r.fit.slope},
                                 {"r_squared", r.fit.r_squared},
                                 {"n_points", r.fit.n_points},
                                 {"small_stratum_warnings",
                                  r.small_stratum_warnings}};
        spill(dir + "/min_stratum_fit.json", fit.dump(2) + "\n");
        std::cerr << fit.dump(2) << "\n";
      } else if (exp_name == "uniform-miss") {
        std::vector<std::pair<std::string, SimplicialComplex2D>> corpus;
        for (int i = 0; i < cfg.cycle_corpus_size; ++i) {
          corpus.push_back({"cycle_" + std::to_string(i),
                            random_cycle_graph(cfg.cycle_vertices,
                                               cfg.seed * 31ull + i)});
        }
        spill(dir + "/uniform_miss.csv",
              experiment_uniform_miss(cfg, corpus));
      } else if (exp_name == "lower-bound") {
        spill(dir + "/lower_bound.json",
              experiment_lower_bound(cfg).dump(2) + "\n");
      } else if (exp_name == "lost-vertex") {
        spill(dir + "/lost_vertex.json",
              experiment_lost_vertex(cfg).dump(2) + "\n");
      } else {
        throw std::runtime_error("unknown experiment '" + exp_name + "'");
      }
    }
  } catch (const validation_rejection& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
