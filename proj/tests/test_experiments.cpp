#include <doctest.h>

#include <cmath>
#include <sstream>

#include "strataudit/experiments.hpp"

using namespace strataudit;

TEST_CASE("loglog fit") {
  SUBCASE("exact power law y = 2x") {
    std::vector<std::pair<double, double>> pts;
    for (double x : {1.0, 2.0, 4.0, 10.0}) pts.push_back({x, 2 * x});
    const RegressionFit f = loglog_fit(pts);
    CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.n_points == 4);
  }
  SUBCASE("exact power law y = x^-4") {
    std::vector<std::pair<double, double>> pts;
    for (double x : {2.0, 3.0, 5.0, 8.0, 13.0}) {
      pts.push_back({x, std::pow(x, -4.0)});
    }
    const RegressionFit f = loglog_fit(pts);
    CHECK(f.slope == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(loglog_fit({{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_fit({{1, 1}, {2, -1}}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_fit({{0, 1}, {2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_fit({{3, 1}, {3, 2}}), std::invalid_argument);
  }
}

TEST_CASE("svg scatter") {
  std::vector<std::pair<double, double>> pts = {{1, 1}, {10, 0.01}, {100, 1e-4}};
  const RegressionFit fit = loglog_fit(pts);
  const std::string svg = svg_scatter(pts, &fit, "n0", "min stratum");
  SUBCASE("well formed") {
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);
    std::size_t circles = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
      ++circles;
      ++pos;
    }
    CHECK(circles == 3);
  }
  SUBCASE("deterministic") {
    CHECK(svg == svg_scatter(pts, &fit, "n0", "min stratum"));
  }
  SUBCASE("no fit line without a fit") {
    const std::string bare = svg_scatter(pts, nullptr, "x", "y");
    CHECK(bare.find("<line") == std::string::npos);
    CHECK_THROWS_AS(svg_scatter({}, nullptr, "x", "y"), std::invalid_argument);
  }
}

TEST_CASE("config parsing") {
  const ExperimentConfig def = ExperimentConfig::from_json(nlohmann::json::object());
  CHECK(def.cloud_sizes.size() == 12);
  CHECK(def.clouds_per_size == 100);
  CHECK(def.ks == std::vector<int>({4, 8, 16, 32, 64}));
  CHECK(def.random_seeds == 20);
  CHECK(def.n_list.size() == 12);

  const ExperimentConfig c = ExperimentConfig::from_json(
      nlohmann::json::parse(R"({"seed": 9, "ks": [2, 3], "triple_count": 5})"));
  CHECK(c.seed == 9);
  CHECK(c.ks == std::vector<int>({2, 3}));
  CHECK(c.triple_count == 5);
  CHECK(c.clouds_per_size == 100);
}

TEST_CASE("min stratum experiment") {
  ExperimentConfig cfg;
  cfg.cloud_sizes = {3, 5, 10, 20};
  cfg.clouds_per_size = 8;
  cfg.seed = 3;
  const auto corpus = randpts_corpus(cfg);
  REQUIRE(corpus.size() == 32);
  CHECK(corpus[0].first == "randpts_3_0");

  const MinStratumResult r = experiment_min_stratum(cfg, corpus);
  CHECK(r.rows.size() == 32);
  CHECK(r.fit.n_points == 32);
  // Minimum stratum shrinks polynomially with n0; even this small run should
  // show a clearly negative slope and a real fit.
  CHECK(r.fit.slope < -2.0);
  CHECK(r.fit.r_squared > 0.5);
  CHECK(r.csv.rfind("id,n0,min_stratum\n", 0) == 0);
  CHECK(std::count(r.csv.begin(), r.csv.end(), '\n') == 33);
  CHECK(r.svg.rfind("<svg", 0) == 0);
  for (const MinStratumRow& row : r.rows) {
    CHECK(row.min_stratum > 0);
    CHECK(row.min_stratum <= kTau);
  }
  CHECK_THROWS_AS(experiment_min_stratum(cfg, {}), std::invalid_argument);
}

TEST_CASE("uniform miss experiment") {
  ExperimentConfig cfg;
  cfg.ks = {4, 8, 16};
  cfg.random_seeds = 3;
  cfg.seed = 2;
  std::vector<std::pair<std::string, SimplicialComplex2D>> corpus;
  corpus.push_back({"tri", example_triangle()});
  corpus.push_back({"cycle", random_cycle_graph(6, 17)});

  const std::string csv = experiment_uniform_miss(cfg, corpus);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "complex_id,k_or_eps,scheme,seed,n0,missed_count,missed_fraction");

  // Per complex: one grid row per k plus seeds * ks random rows.
  int rows = 0;
  std::string line;
  double prev_missed = -1;
  std::string prev_key;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string id, k, scheme, seed, n0, missed, frac;
    std::getline(ls, id, ',');
    std::getline(ls, k, ',');
    std::getline(ls, scheme, ',');
    std::getline(ls, seed, ',');
    std::getline(ls, n0, ',');
    std::getline(ls, missed, ',');
    std::getline(ls, frac, ',');
    CHECK((scheme == "grid" || scheme == "random"));
    const double m = std::stod(missed);
    CHECK(std::stod(frac) == doctest::Approx(m / std::stod(n0)));
    // Nested random prefixes make missed counts antitone in k per seed.
    const std::string key = id + "/" + scheme + "/" + seed;
    if (key == prev_key) CHECK(m <= prev_missed);
    prev_key = key;
    prev_missed = m;
  }
  CHECK(rows == 2 * (3 + 3 * 3));
  CHECK(csv == experiment_uniform_miss(cfg, corpus));
}

TEST_CASE("lower bound experiment") {
  ExperimentConfig cfg;
  cfg.n_list = {1, 2, 3};
  const nlohmann::json r = experiment_lower_bound(cfg);
  REQUIRE(r.size() == 3);
  CHECK(r[2]["n"] == 3);
  CHECK(r[2]["delta_star"].get<double>() == doctest::Approx(0.0375));
  CHECK(r[2]["disjoint"] == true);
  CHECK(r[2]["min_directions_bound"] == 3);
}

TEST_CASE("lost vertex experiment") {
  ExperimentConfig cfg;
  cfg.triple_count = 5;
  cfg.resolution = 2000;
  cfg.seed = 4;
  const nlohmann::json r = experiment_lost_vertex(cfg);
  REQUIRE(r.size() == 6);
  CHECK(r[0]["id"] == "canonical");
  CHECK(r[0]["predicted_hausdorff"].get<double>() == doctest::Approx(1.0));
  for (const auto& row : r) {
    CHECK(row["descriptors_equal_off_region"] == true);
    CHECK(row["descriptors_unequal_on_region"] == true);
    const double predicted = row["predicted_hausdorff"].get<double>();
    const double computed = row["computed_hausdorff"].get<double>();
    const double bound = row["hausdorff_error_bound"].get<double>();
    CHECK(std::abs(predicted - computed) <= bound + 1e-9);
  }
}
