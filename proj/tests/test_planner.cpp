#include "uavcrowd/planner.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace uavcrowd;

namespace
{
std::vector<GraphNode> random_nodes(Rng &rng, std::size_t clusters)
{
  std::vector<GraphNode> nodes;
  for (std::size_t k = 0; k < clusters; ++k)
    nodes.push_back({static_cast<int>(k + 1), {rng.uniform(0, 100), rng.uniform(0, 100)},
                     static_cast<double>(rng.integer(3, 12)) + rng.uniform01()});
  return nodes;
}

ClusterGraph random_graph(Rng &rng, std::size_t node_count, double alpha)
{
  auto const nodes = random_nodes(rng, node_count - 1);
  return build_graph(std::span<GraphNode const>(nodes), {0, 0}, alpha);
}

SquareMatrix random_asymmetric(Rng &rng, std::size_t n)
{
  SquareMatrix f(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        f(i, j) = rng.uniform(1, 20);
  return f;
}

void check_valid(ClusterGraph const &g, Tour const &t)
{
  std::vector<std::size_t> sorted = t.order;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == identity_order(g.size()));
  CHECK(t.total_cost == doctest::Approx(oracle::edge_sum(g.cost, t.order)).epsilon(1e-12));
}
}  // namespace

TEST_CASE("alpha 0 is pure distance")
{
  std::vector<GraphNode> nodes{{1, {3, 0}, 4}, {2, {0, 4}, 6}};
  auto const g = build_graph(std::span<GraphNode const>(nodes), {0, 0}, 0.0);
  CHECK(g(1, 2) == doctest::Approx(5.0));
  std::vector<std::size_t> const order{1, 2};
  CHECK(tour_cost(g, order) == doctest::Approx(12.0));
  CHECK(solve_exhaustive(g).total_cost == doctest::Approx(12.0));
}

TEST_CASE("priority cost from risk differences")
{
  std::vector<GraphNode> nodes{{1, {10, 0}, 5}, {2, {0, 10}, 2}};
  auto const g = build_graph(std::span<GraphNode const>(nodes), {0, 0}, 1.0);
  CHECK(g.priority(0, 1) == 0.0);
  CHECK(g.priority(2, 1) == doctest::Approx(3.0));
  CHECK(g.priority(1, 2) == 0.0);
  CHECK(g.priority(1, 0) == 0.0);
  CHECK(g(2, 1) == doctest::Approx(3.0));
}

TEST_CASE("alpha 0.5 halves both components")
{
  Rng rng(7);
  auto const nodes = random_nodes(rng, 5);
  auto const g = build_graph(std::span<GraphNode const>(nodes), {1, 2}, 0.5);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j)
        CHECK(g(i, j) == doctest::Approx((g.priority(i, j) + g.energy(i, j)) / 2.0));
}

TEST_CASE("graph construction errors")
{
  std::vector<GraphNode> const none;
  CHECK_THROWS_AS(build_graph(std::span<GraphNode const>(none), {0, 0}, 0.5), DomainError);
  std::vector<GraphNode> nodes{{1, {1, 1}, 3}};
  CHECK_THROWS_AS(build_graph(std::span<GraphNode const>(nodes), {0, 0}, 1.5), DomainError);
  std::vector<GraphNode> twins{{1, {1, 1}, 3}, {2, {1, 1}, 4}};
  auto const g = build_graph(std::span<GraphNode const>(twins), {0, 0}, 0.0);
  CHECK(g(1, 2) == 0.0);
}

TEST_CASE("tour cost examples")
{
  std::vector<GraphNode> one{{1, {3, 4}, 5}};
  auto const g1 = build_graph(std::span<GraphNode const>(one), {0, 0}, 0.3);
  std::vector<std::size_t> const o1{1};
  CHECK(tour_cost(g1, o1) == doctest::Approx(g1(0, 1) + g1(1, 0)));

  SquareMatrix tri(3, 1.0);
  auto const g3 = graph_from_costs(tri);
  CHECK(tour_cost(g3, std::vector<std::size_t>{1, 2}) == doctest::Approx(3.0));
  CHECK(tour_cost(g3, std::vector<std::size_t>{2, 1}) == doctest::Approx(3.0));

  SquareMatrix f(4);
  double v = 1.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j)
        f(i, j) = v++;
  auto const g4 = graph_from_costs(f);
  // 0 -> 2 -> 1 -> 3 -> 0 : f02 + f21 + f13 + f30 = 2 + 8 + 6 + 10
  CHECK(tour_cost(g4, std::vector<std::size_t>{2, 1, 3}) == doctest::Approx(26.0));

  CHECK_THROWS_AS(tour_cost(g4, std::vector<std::size_t>{1, 1, 3}), DomainError);
  CHECK_THROWS_AS(tour_cost(g4, std::vector<std::size_t>{1, 2}), DomainError);
  CHECK_THROWS_AS(tour_cost(g4, std::vector<std::size_t>{0, 1, 2}), DomainError);
}

TEST_CASE("exhaustive search")
{
  std::vector<GraphNode> one{{1, {3, 4}, 5}};
  auto const g1 = build_graph(std::span<GraphNode const>(one), {0, 0}, 0.5);
  CHECK(solve_exhaustive(g1).order == std::vector<std::size_t>{1});

  Rng rng(11);
  for (int t = 0; t < 20; ++t)
  {
    auto const g = graph_from_costs(random_asymmetric(rng, 6));
    auto const best = solve_exhaustive(g);
    check_valid(g, best);
    CHECK(best.total_cost == doctest::Approx(oracle::min_tour_dfs(g.cost)).epsilon(1e-12));
  }

  SquareMatrix flat(4, 2.0);
  CHECK(solve_exhaustive(graph_from_costs(flat)).order == std::vector<std::size_t>{1, 2, 3});

  CHECK_THROWS_AS(solve_exhaustive(graph_from_costs(SquareMatrix(12, 1.0))), DomainError);
  CHECK_NOTHROW(solve_exhaustive(graph_from_costs(SquareMatrix(5, 1.0)), 5));
  CHECK_THROWS_AS(solve_exhaustive(graph_from_costs(SquareMatrix(5, 1.0)), 4), DomainError);
}

TEST_CASE("exhaustive at alpha 1 follows priority, not distance")
{
  // Nearest-first would visit 1, 2, 3; descending risk is 3, 1, 2.
  std::vector<GraphNode> nodes{{1, {1, 0}, 5}, {2, {2, 0}, 3}, {3, {50, 0}, 9}};
  auto const g = build_graph(std::span<GraphNode const>(nodes), {0, 0}, 1.0);
  auto const t = solve_exhaustive(g);
  CHECK(t.order == std::vector<std::size_t>{3, 1, 2});
  CHECK(t.total_cost == 0.0);
}

TEST_CASE("two-opt reaches the optimum on small Euclidean instances")
{
  Rng rng(5);
  int hits = 0;
  for (int t = 0; t < 100; ++t)
  {
    auto const g = random_graph(rng, 5, 0.0);
    auto const opt = oracle::min_tour_dfs(g.cost);
    auto const two = solve_two_opt(g, static_cast<std::uint64_t>(t));
    check_valid(g, two);
    hits += two.total_cost <= opt + 1e-9 ? 1 : 0;
  }
  CHECK(hits >= 95);
}

TEST_CASE("two-opt output is a local optimum and never worse than its start")
{
  Rng rng(6);
  for (std::uint64_t seed = 0; seed < 50; ++seed)
  {
    auto const g = seed % 2 == 0 ? random_graph(rng, 8, 0.99) : graph_from_costs(random_asymmetric(rng, 8));
    auto const t = solve_two_opt(g, seed);
    check_valid(g, t);
    for (std::size_t i = 0; i + 1 < t.order.size(); ++i)
      for (std::size_t j = i + 1; j < t.order.size(); ++j)
      {
        auto moved = t.order;
        std::reverse(moved.begin() + static_cast<std::ptrdiff_t>(i), moved.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        CHECK(oracle::edge_sum(g.cost, moved) >= t.total_cost - 1e-9);
      }

    Rng start_rng(derive_seed(seed, 1));
    auto start = identity_order(g.size());
    start_rng.shuffle(std::span(start));
    CHECK(t.total_cost <= oracle::edge_sum(g.cost, start) + 1e-9);
  }
}

TEST_CASE("two-node graphs have one tour for every solver")
{
  std::vector<GraphNode> one{{1, {3, 4}, 5}};
  auto const g = build_graph(std::span<GraphNode const>(one), {0, 0}, 0.99);
  SolverParams params;
  for (auto s : {Solver::Exhaustive, Solver::TwoOpt, Solver::GA, Solver::ACO})
  {
    auto const t = solve(g, s, params, 3);
    CHECK(t.order == std::vector<std::size_t>{1});
    CHECK(t.solver == s);
    CHECK(t.total_cost == doctest::Approx(10.0 * 0.01));
  }
}

TEST_CASE("genetic algorithm keeps its best and stays close to optimal")
{
  Rng rng(8);
  auto const g = random_graph(rng, 7, 0.0);
  double const opt = oracle::min_tour_dfs(g.cost);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
  {
    auto const run = run_ga(g, GaParams{}, seed);
    check_valid(g, run.tour);
    CHECK(run.best_cost_per_generation.size() == 500);
    for (std::size_t k = 1; k < run.best_cost_per_generation.size(); ++k)
      CHECK(run.best_cost_per_generation[k] <= run.best_cost_per_generation[k - 1]);
    CHECK(run.tour.total_cost == doctest::Approx(run.best_cost_per_generation.back()));
    total += run.tour.total_cost;
  }
  CHECK(total / 100.0 <= 1.10 * opt);
}

TEST_CASE("ant colony keeps pheromone bounded and stays close to optimal")
{
  Rng rng(9);
  auto const g = random_graph(rng, 7, 0.0);
  double const opt = oracle::min_tour_dfs(g.cost);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
  {
    auto const run = run_aco(g, AcoParams{}, seed);
    check_valid(g, run.tour);
    CHECK(run.min_pheromone > 0.0);
    CHECK(std::isfinite(run.max_pheromone));
    total += run.tour.total_cost;
  }
  CHECK(total / 100.0 <= 1.10 * opt);
}

TEST_CASE("ant colony on equal costs")
{
  auto const g = graph_from_costs(SquareMatrix(6, 1.0));
  for (std::uint64_t seed = 0; seed < 10; ++seed)
  {
    auto const t = solve_aco(g, AcoParams{}, seed);
    check_valid(g, t);
    CHECK(t.total_cost == doctest::Approx(6.0));
  }
}

TEST_CASE("solvers are deterministic under a fixed seed")
{
  Rng rng(10);
  auto const g = random_graph(rng, 9, 0.99);
  SolverParams params;
  for (auto s : {Solver::TwoOpt, Solver::GA, Solver::ACO})
  {
    auto const a = solve(g, s, params, 42);
    auto const b = solve(g, s, params, 42);
    CHECK(a.order == b.order);
    CHECK(a.total_cost == b.total_cost);
  }
}

TEST_CASE("graph structure properties")
{
  Rng rng(12);
  auto const nodes = random_nodes(rng, 6);
  auto const g0 = build_graph(std::span<GraphNode const>(nodes), {5, 5}, 0.0);
  auto const g1 = build_graph(std::span<GraphNode const>(nodes), {5, 5}, 0.7);
  for (std::size_t i = 0; i < g0.size(); ++i)
  {
    CHECK(g1.priority(0, i) == 0.0);
    CHECK(g1.priority(i, 0) == 0.0);
    for (std::size_t j = 0; j < g0.size(); ++j)
    {
      CHECK(g0(i, j) == g0(j, i));
      CHECK(g1.priority(i, j) >= 0.0);
    }
  }
}

TEST_CASE("solver names and parameter validation")
{
  for (auto s : {Solver::Exhaustive, Solver::TwoOpt, Solver::GA, Solver::ACO})
    CHECK(parse_solver(to_string(s)) == s);
  CHECK_THROWS_AS(parse_solver("simulated-annealing"), ConfigError);

  SolverParams p;
  CHECK_NOTHROW(p.validate());
  p.ga.mutation_rate = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.aco.rho = 1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.ga.population_size = 1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
