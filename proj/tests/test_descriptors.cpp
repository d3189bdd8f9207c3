#include <doctest.h>

#include <cmath>

#include "naive_oracles.hpp"
#include "strataudit/descriptors.hpp"
#include "test_helpers.hpp"

using namespace strataudit;

namespace {

SimplicialComplex2D triangle_graph(bool filled) {
  SimplicialComplex2D k;
  k.vertices = {{0, 0}, {2, 1}, {1, 3}};
  k.add_edge(0, 1);
  k.add_edge(0, 2);
  k.add_edge(1, 2);
  if (filled) k.add_triangle(0, 1, 2);
  return k;
}

const Direction kUp{kPi / 2};

}  // namespace

TEST_CASE("persistence diagram") {
  SUBCASE("unfilled triangle graph") {
    const PersistenceDiagram d = persistence_diagram(triangle_graph(false), kUp);
    REQUIRE(d.points.size() == 2);
    CHECK(d.points[0].dim == 0);
    CHECK(d.points[0].birth == doctest::Approx(0));
    CHECK(d.points[0].essential());
    CHECK(d.points[1].dim == 1);
    CHECK(d.points[1].birth == doctest::Approx(3));
    CHECK(d.points[1].essential());
  }
  SUBCASE("filled triangle kills the cycle at its own height") {
    const PersistenceDiagram d = persistence_diagram(triangle_graph(true), kUp);
    REQUIRE(d.points.size() == 1);
    CHECK(d.points[0].dim == 0);
    CHECK(d.points[0].birth == doctest::Approx(0));
    CHECK(d.points[0].essential());
  }
  SUBCASE("two disjoint vertices") {
    SimplicialComplex2D k;
    k.vertices = {{0.3, 0}, {0.1, 1}};
    const PersistenceDiagram d = persistence_diagram(k, kUp);
    REQUIRE(d.points.size() == 2);
    CHECK(d.points[0].birth == doctest::Approx(0));
    CHECK(d.points[1].birth == doctest::Approx(1));
    CHECK(d.points[0].essential());
    CHECK(d.points[1].essential());
  }
  SUBCASE("no zero-persistence points on random complexes") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      const SimplicialComplex2D k = testing::random_small_complex(6, trial);
      const Direction s = testing::random_nondegenerate_direction(k, rng);
      for (const PdPoint& p : persistence_diagram(k, s).points) {
        CHECK(p.birth < p.death);
      }
    }
  }
}

TEST_CASE("optimized persistence equals naive full reduction") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const SimplicialComplex2D k =
        testing::random_small_complex(3 + trial % 5, 1000 + trial);
    const Direction s = testing::random_nondegenerate_direction(k, rng);
    const PersistenceDiagram fast = persistence_diagram(k, s);
    const PersistenceDiagram slow = testing::naive_persistence(k, s);
    CHECK(descriptor_equal(fast, slow, 1e-12));
  }
}

TEST_CASE("euler characteristic function") {
  SUBCASE("unfilled triangle graph") {
    const StepFunction f =
        euler_characteristic_function(triangle_graph(false), kUp);
    REQUIRE(f.breakpoints.size() == 2);
    CHECK(f.breakpoints[0].first == doctest::Approx(0));
    CHECK(f.breakpoints[0].second == 1);
    CHECK(f.breakpoints[1].first == doctest::Approx(3));
    CHECK(f.breakpoints[1].second == 0);
  }
  SUBCASE("filled triangle stays at 1") {
    const StepFunction f =
        euler_characteristic_function(triangle_graph(true), kUp);
    REQUIRE(f.breakpoints.size() == 1);
    CHECK(f.breakpoints[0].second == 1);
  }
  SUBCASE("empty complex") {
    const StepFunction f =
        euler_characteristic_function(SimplicialComplex2D{}, kUp);
    CHECK(f.breakpoints.empty());
  }
}

TEST_CASE("betti functions and Euler-Poincare") {
  SUBCASE("unfilled triangle graph") {
    const auto [b0, b1] = betti_functions(triangle_graph(false), kUp);
    REQUIRE(b0.breakpoints.size() == 1);
    CHECK(b0.breakpoints[0] == std::pair{0.0, 1});
    REQUIRE(b1.breakpoints.size() == 1);
    CHECK(b1.breakpoints[0].first == doctest::Approx(3));
    CHECK(b1.breakpoints[0].second == 1);
  }
  SUBCASE("chi = b0 - b1 on random instances") {
    Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
      const SimplicialComplex2D k =
          testing::random_small_complex(4 + trial % 4, 2000 + trial);
      const Direction s = testing::random_nondegenerate_direction(k, rng);
      const StepFunction chi = euler_characteristic_function(k, s);
      const auto [b0, b1] = betti_functions(k, s);
      for (int probe = 0; probe < 10; ++probe) {
        const double t = rng.uniform(-15.0, 15.0);
        CHECK(chi.value_at(t) == b0.value_at(t) - b1.value_at(t));
      }
    }
  }
}

TEST_CASE("bottleneck distance") {
  auto fin = [](double b, double d) { return PdPoint{0, b, d}; };
  SUBCASE("single point to empty diagram") {
    PersistenceDiagram d1, d2;
    d1.points = {fin(1, 3)};
    CHECK(bottleneck_distance(d1, d2) == doctest::Approx(1));
  }
  SUBCASE("identical diagrams") {
    PersistenceDiagram d;
    d.points = {fin(0, 4), fin(1, 3), {1, 2, kInf}};
    CHECK(bottleneck_distance(d, d) == doctest::Approx(0));
  }
  SUBCASE("two-point matching verified by hand") {
    PersistenceDiagram d1, d2;
    d1.points = {fin(0, 4)};
    d2.points = {fin(1, 3)};
    CHECK(bottleneck_distance(d1, d2) == doctest::Approx(1));
  }
  SUBCASE("essential mismatch is infinite") {
    PersistenceDiagram d1, d2;
    d1.points = {{0, 0, kInf}};
    CHECK(std::isinf(bottleneck_distance(d1, d2)));
  }
  SUBCASE("matches brute-force matching on random diagrams") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      PersistenceDiagram d1, d2;
      const int n1 = static_cast<int>(rng.uniform(0, 5));
      const int n2 = static_cast<int>(rng.uniform(0, 5));
      for (int i = 0; i < n1; ++i) {
        const double b = rng.uniform(0, 5);
        d1.points.push_back(fin(b, b + rng.uniform(0.01, 4.0)));
      }
      for (int i = 0; i < n2; ++i) {
        const double b = rng.uniform(0, 5);
        d2.points.push_back(fin(b, b + rng.uniform(0.01, 4.0)));
      }
      const double expected =
          testing::brute_force_bottleneck_finite(d1.points, d2.points);
      CHECK(bottleneck_distance(d1, d2) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("metric axioms on random triples") {
    Rng rng(17);
    auto random_diagram = [&]() {
      PersistenceDiagram d;
      const int n = 1 + static_cast<int>(rng.uniform(0, 4));
      for (int i = 0; i < n; ++i) {
        const double b = rng.uniform(0, 5);
        d.points.push_back({0, b, b + rng.uniform(0.01, 4.0)});
      }
      d.points.push_back({0, rng.uniform(0, 1), kInf});
      return d;
    };
    for (int trial = 0; trial < 50; ++trial) {
      const PersistenceDiagram a = random_diagram();
      const PersistenceDiagram b = random_diagram();
      const PersistenceDiagram c = random_diagram();
      const double ab = bottleneck_distance(a, b);
      const double ba = bottleneck_distance(b, a);
      const double bc = bottleneck_distance(b, c);
      const double ac = bottleneck_distance(a, c);
      CHECK(ab == ba);
      CHECK(ac <= ab + bc + 1e-9);
      CHECK(bottleneck_distance(a, a) == 0);
    }
  }
}

TEST_CASE("ecf L1 distance") {
  SUBCASE("unit box") {
    StepFunction f, g;
    f.breakpoints = {{0, 1}, {3, 0}};
    g.breakpoints = {{0, 1}, {2, 0}};
    CHECK(ecf_l1_distance(f, g) == doctest::Approx(1));
    CHECK(ecf_l1_distance(f, f) == doctest::Approx(0));
  }
  SUBCASE("different final values are infinite") {
    StepFunction f, g;
    f.breakpoints = {{0, 1}};
    g.breakpoints = {{0, 2}};
    CHECK(std::isinf(ecf_l1_distance(f, g)));
  }
  SUBCASE("matches quadrature on random step functions") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
      auto random_sf = [&](int final_value) {
        std::vector<std::pair<double, int>> ev;
        const int n = 1 + static_cast<int>(rng.uniform(0, 5));
        int running = 0;
        for (int i = 0; i < n; ++i) {
          const int delta = rng.uniform() < 0.5 ? 1 : -1;
          ev.push_back({rng.uniform(0.0, 10.0), delta});
          running += delta;
        }
        ev.push_back({10.5, final_value - running});
        return StepFunction::from_deltas(std::move(ev));
      };
      const StepFunction f = random_sf(0);
      const StepFunction g = random_sf(0);
      const double exact = ecf_l1_distance(f, g);
      double quad = 0;
      const double h = 1e-4;
      for (double t = -1; t < 12; t += h) {
        quad += std::abs(f.value_at(t) - g.value_at(t)) * h;
      }
      CHECK(exact == doctest::Approx(quad).epsilon(0).scale(1).epsilon(1e-3));
    }
  }
}

TEST_CASE("descriptor equality and JSON round trips") {
  const SimplicialComplex2D k = triangle_graph(false);
  const PersistenceDiagram d = persistence_diagram(k, kUp);
  const StepFunction f = euler_characteristic_function(k, kUp);
  CHECK(descriptor_equal(d, d));
  CHECK(descriptor_equal(f, f));
  CHECK(descriptor_equal(d, diagram_from_json(to_json(d))));
  CHECK(descriptor_equal(f, step_function_from_json(to_json(f))));
  CHECK(to_json(d)["points"][1]["death"] == "inf");
}
