#include "uavcrowd/planner.hpp"

#include "uavcrowd/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace uavcrowd
{
namespace
{
inline constexpr double kMinCost = 1e-9;

// Stream ids for derive_seed, one per solver.
inline constexpr std::uint64_t kTwoOptStream = 1;
inline constexpr std::uint64_t kGaStream = 2;
inline constexpr std::uint64_t kAcoStream = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Tour finish(ClusterGraph const &graph, std::vector<std::size_t> order, Solver solver, Clock::time_point start)
{
  Tour t;
  t.total_cost = tour_cost(graph, order);
  t.order = std::move(order);
  t.solver = solver;
  t.wall_time_s = seconds_since(start);
  return t;
}

std::vector<std::size_t> random_order(std::size_t node_count, Rng &rng)
{
  auto order = identity_order(node_count);
  rng.shuffle(std::span(order));
  return order;
}

// Unchecked cost for solver inner loops.
double cycle_cost(ClusterGraph const &graph, std::span<std::size_t const> order)
{
  double total = 0.0;
  std::size_t prev = 0;
  for (auto node : order)
  {
    total += graph(prev, node);
    prev = node;
  }
  return total + graph(prev, 0);
}

std::vector<std::size_t> ordered_crossover(std::span<std::size_t const> p1,
                                           std::span<std::size_t const> p2,
                                           Rng &rng)
{
  std::size_t const n = p1.size();
  std::size_t a = rng.index(n);
  std::size_t b = rng.index(n);
  if (a > b)
    std::swap(a, b);

  std::vector<std::size_t> child(n, 0);
  std::vector<bool> taken(n + 1, false);
  for (std::size_t i = a; i <= b; ++i)
  {
    child[i] = p1[i];
    taken[p1[i]] = true;
  }
  // Fill the remaining slots after the slice, wrapping, in parent-2 order.
  std::size_t write = (b + 1) % n;
  for (std::size_t k = 0; k < n; ++k)
  {
    auto const gene = p2[(b + 1 + k) % n];
    if (taken[gene])
      continue;
    child[write] = gene;
    taken[gene] = true;
    write = (write + 1) % n;
  }
  return child;
}

void swap_mutation(std::vector<std::size_t> &genes, double rate, Rng &rng)
{
  for (std::size_t i = 0; i < genes.size(); ++i)
    if (rng.uniform01() < rate)
      std::swap(genes[i], genes[rng.index(genes.size())]);
}
}  // namespace

ClusterGraph build_graph(std::span<GraphNode const> clusters, Point2 depot, double alpha)
{
  if (clusters.empty())
    throw DomainError("cluster graph needs at least one cluster");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("alpha must lie in [0, 1]");

  ClusterGraph g;
  g.alpha = alpha;
  g.nodes.push_back({0, depot, 0.0});
  g.nodes.insert(g.nodes.end(), clusters.begin(), clusters.end());

  std::size_t const n = g.nodes.size();
  g.cost = SquareMatrix(n);
  g.priority = SquareMatrix(n);
  g.energy = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
    {
      if (i == j)
        continue;
      double const fe = distance(g.nodes[i].position, g.nodes[j].position);
      double const fp = i == 0 ? 0.0 : std::max(0.0, g.nodes[j].risk - g.nodes[i].risk);
      g.energy(i, j) = fe;
      g.priority(i, j) = fp;
      g.cost(i, j) = alpha * fp + (1.0 - alpha) * fe;
    }
  return g;
}

ClusterGraph build_graph(std::span<Cluster const> clusters, Point2 depot, double alpha)
{
  std::vector<GraphNode> nodes;
  nodes.reserve(clusters.size());
  for (auto const &c : clusters)
    nodes.push_back({c.id, c.barycenter, c.risk});
  return build_graph(nodes, depot, alpha);
}

ClusterGraph graph_from_costs(SquareMatrix cost)
{
  if (cost.size() < 2)
    throw DomainError("cost matrix must have at least two nodes");
  ClusterGraph g;
  for (std::size_t i = 0; i < cost.size(); ++i)
    g.nodes.push_back({static_cast<int>(i), {}, 0.0});
  g.priority = SquareMatrix(cost.size());
  g.energy = cost;
  g.cost = std::move(cost);
  return g;
}

std::string_view to_string(Solver s)
{
  switch (s)
  {
    case Solver::Exhaustive: return "exhaustive";
    case Solver::TwoOpt: return "two-opt";
    case Solver::GA: return "ga";
    case Solver::ACO: return "aco";
  }
  return "unknown";
}

Solver parse_solver(std::string_view name)
{
  for (auto s : {Solver::Exhaustive, Solver::TwoOpt, Solver::GA, Solver::ACO})
    if (to_string(s) == name)
      return s;
  throw ConfigError("unknown solver: " + std::string(name));
}

void SolverParams::validate() const
{
  if (ga.population_size == 1)
    throw ConfigError("GA population size must be at least 2");
  if (!(ga.mutation_rate >= 0.0 && ga.mutation_rate <= 1.0))
    throw ConfigError("GA mutation rate must lie in [0, 1]");
  if (!(aco.rho > 0.0 && aco.rho < 1.0))
    throw ConfigError("ACO evaporation rho must lie in (0, 1)");
  if (!(aco.q > 0.0) || !(aco.initial_pheromone > 0.0))
    throw ConfigError("ACO deposit and initial pheromone must be positive");
  if (!(aco.delta >= 0.0) || !(aco.beta >= 0.0))
    throw ConfigError("ACO exponents must be non-negative");
}

std::vector<std::size_t> identity_order(std::size_t node_count)
{
  std::vector<std::size_t> order(node_count > 0 ? node_count - 1 : 0);
  std::iota(order.begin(), order.end(), std::size_t{1});
  return order;
}

void check_permutation(ClusterGraph const &graph, std::span<std::size_t const> order)
{
  std::size_t const n = graph.size();
  if (n == 0 || order.size() != n - 1)
    throw DomainError("tour must visit every non-depot node exactly once");
  std::vector<bool> seen(n, false);
  for (auto node : order)
  {
    if (node == 0 || node >= n || seen[node])
      throw DomainError("tour is not a permutation of the non-depot nodes");
    seen[node] = true;
  }
}

double tour_cost(ClusterGraph const &graph, std::span<std::size_t const> order)
{
  check_permutation(graph, order);
  return cycle_cost(graph, order);
}

Tour solve_exhaustive(ClusterGraph const &graph, std::size_t cap)
{
  auto const start = Clock::now();
  if (graph.size() > cap)
    throw DomainError("exhaustive search is limited to " + std::to_string(cap) + " nodes (got "
                      + std::to_string(graph.size()) + "); use two-opt, ga or aco instead");

  auto order = identity_order(graph.size());
  auto best = order;
  double best_cost = cycle_cost(graph, order);
  while (std::next_permutation(order.begin(), order.end()))
  {
    double const c = cycle_cost(graph, order);
    if (c < best_cost)
    {
      best_cost = c;
      best = order;
    }
  }
  return finish(graph, std::move(best), Solver::Exhaustive, start);
}

Tour solve_two_opt(ClusterGraph const &graph, std::uint64_t seed)
{
  auto const start = Clock::now();
  Rng rng(derive_seed(seed, kTwoOptStream));
  auto order = random_order(graph.size(), rng);
  std::size_t const m = order.size();
  if (m < 2)
    return finish(graph, std::move(order), Solver::TwoOpt, start);

  // seq = depot, order..., depot. Reversing order[i..j] reverses seq[i+1..j+1].
  std::vector<std::size_t> seq(m + 2, 0);
  std::vector<double> fwd(m + 2, 0.0);
  std::vector<double> bwd(m + 2, 0.0);
  while (true)
  {
    std::copy(order.begin(), order.end(), seq.begin() + 1);
    for (std::size_t t = 0; t + 1 < seq.size(); ++t)
    {
      fwd[t + 1] = fwd[t] + graph(seq[t], seq[t + 1]);
      bwd[t + 1] = bwd[t] + graph(seq[t + 1], seq[t]);
    }
    double const tolerance = 1e-12 * std::max(1.0, std::abs(fwd[m + 1]));

    double best_delta = -tolerance;
    std::size_t best_i = 0;
    std::size_t best_j = 0;
    for (std::size_t i = 0; i + 1 < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
      {
        std::size_t const before = seq[i];
        std::size_t const first = seq[i + 1];
        std::size_t const last = seq[j + 1];
        std::size_t const after = seq[j + 2];
        double const boundary = graph(before, last) + graph(first, after) - graph(before, first) - graph(last, after);
        double const interior = (bwd[j + 1] - bwd[i + 1]) - (fwd[j + 1] - fwd[i + 1]);
        double const delta = boundary + interior;
        if (delta < best_delta)
        {
          best_delta = delta;
          best_i = i;
          best_j = j;
        }
      }
    if (best_delta >= -tolerance)
      break;
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(best_i),
                 order.begin() + static_cast<std::ptrdiff_t>(best_j) + 1);
  }
  return finish(graph, std::move(order), Solver::TwoOpt, start);
}

GaRun run_ga(ClusterGraph const &graph, GaParams const &params, std::uint64_t seed)
{
  auto const start = Clock::now();
  Rng rng(derive_seed(seed, kGaStream));
  GaRun run;
  std::size_t const genes = graph.size() > 0 ? graph.size() - 1 : 0;
  if (genes < 2)
  {
    run.tour = finish(graph, identity_order(graph.size()), Solver::GA, start);
    run.best_cost_per_generation.assign(params.generations, run.tour.total_cost);
    return run;
  }

  std::size_t const pop_size = std::max<std::size_t>(2, params.population_size > 0 ? params.population_size : 2 * graph.size());
  std::size_t const elites = std::min(params.elite_count, pop_size);

  std::vector<std::vector<std::size_t>> population;
  population.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i)
    population.push_back(random_order(graph.size(), rng));
  std::vector<double> costs(pop_size);

  // Linear rank weights: rank r (0 = fittest) gets weight pop_size - r.
  double const weight_total = static_cast<double>(pop_size) * static_cast<double>(pop_size + 1) / 2.0;
  auto pick_rank = [&]() {
    double target = rng.uniform01() * weight_total;
    for (std::size_t r = 0; r < pop_size; ++r)
    {
      target -= static_cast<double>(pop_size - r);
      if (target < 0.0)
        return r;
    }
    return pop_size - 1;
  };

  std::vector<std::size_t> ranking(pop_size);
  auto rank_population = [&]() {
    for (std::size_t i = 0; i < pop_size; ++i)
      costs[i] = cycle_cost(graph, population[i]);
    std::iota(ranking.begin(), ranking.end(), std::size_t{0});
    // Fitness is 1 / max(cost, kMinCost); sorting by it descending.
    std::stable_sort(ranking.begin(), ranking.end(), [&](std::size_t a, std::size_t b) {
      return 1.0 / std::max(costs[a], kMinCost) > 1.0 / std::max(costs[b], kMinCost);
    });
  };

  rank_population();
  run.best_cost_per_generation.reserve(params.generations);
  for (std::size_t gen = 0; gen < params.generations; ++gen)
  {
    std::vector<std::vector<std::size_t>> next;
    next.reserve(pop_size);
    for (std::size_t e = 0; e < elites; ++e)
      next.push_back(population[ranking[e]]);

    std::size_t const offspring = pop_size - elites;
    std::vector<std::size_t> pool(offspring + 1);
    for (auto &p : pool)
      p = ranking[pick_rank()];

    for (std::size_t k = 0; k < offspring; ++k)
    {
      auto child = ordered_crossover(population[pool[k]], population[pool[offspring - k]], rng);
      swap_mutation(child, params.mutation_rate, rng);
      next.push_back(std::move(child));
    }
    population = std::move(next);
    rank_population();
    run.best_cost_per_generation.push_back(costs[ranking[0]]);
  }

  run.tour = finish(graph, population[ranking[0]], Solver::GA, start);
  return run;
}

Tour solve_ga(ClusterGraph const &graph, GaParams const &params, std::uint64_t seed)
{
  return run_ga(graph, params, seed).tour;
}

AcoRun run_aco(ClusterGraph const &graph, AcoParams const &params, std::uint64_t seed)
{
  auto const start = Clock::now();
  Rng rng(derive_seed(seed, kAcoStream));
  AcoRun run;
  std::size_t const n = graph.size();
  run.min_pheromone = run.max_pheromone = params.initial_pheromone;
  if (n <= 2)
  {
    run.tour = finish(graph, identity_order(n), Solver::ACO, start);
    return run;
  }

  std::size_t const colony = params.colony_size > 0 ? params.colony_size : (n - 1 + 1) / 2;

  SquareMatrix pheromone(n, params.initial_pheromone);
  SquareMatrix visibility(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        visibility(i, j) = std::pow(1.0 / std::max(graph(i, j), kMinCost), params.beta);

  std::vector<std::size_t> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::size_t>> tours(colony);
  std::vector<double> tour_costs(colony);
  std::vector<std::size_t> candidates;
  std::vector<double> weights;

  for (std::size_t iter = 0; iter < params.iterations; ++iter)
  {
    for (std::size_t ant = 0; ant < colony; ++ant)
    {
      auto &tour = tours[ant];
      tour.clear();
      candidates = identity_order(n);
      std::size_t current = 0;
      while (!candidates.empty())
      {
        weights.resize(candidates.size());
        double total = 0.0;
        for (std::size_t k = 0; k < candidates.size(); ++k)
        {
          auto const j = candidates[k];
          weights[k] = std::pow(pheromone(current, j), params.delta) * visibility(current, j);
          total += weights[k];
        }
        std::size_t chosen = candidates.size() - 1;
        if (total > 0.0 && std::isfinite(total))
        {
          double target = rng.uniform01() * total;
          for (std::size_t k = 0; k < candidates.size(); ++k)
          {
            target -= weights[k];
            if (target < 0.0)
            {
              chosen = k;
              break;
            }
          }
        }
        else
        {
          chosen = rng.index(candidates.size());
        }
        current = candidates[chosen];
        tour.push_back(current);
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(chosen));
      }
      tour_costs[ant] = cycle_cost(graph, tour);
      if (tour_costs[ant] < best_cost)
      {
        best_cost = tour_costs[ant];
        best = tour;
      }
    }

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        pheromone(i, j) *= 1.0 - params.rho;
    for (std::size_t ant = 0; ant < colony; ++ant)
    {
      double const deposit = params.q / std::max(tour_costs[ant], kMinCost);
      std::size_t prev = 0;
      for (auto node : tours[ant])
      {
        pheromone(prev, node) += deposit;
        prev = node;
      }
      pheromone(prev, 0) += deposit;
    }

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j)
        {
          run.min_pheromone = std::min(run.min_pheromone, pheromone(i, j));
          run.max_pheromone = std::max(run.max_pheromone, pheromone(i, j));
        }
  }

  run.tour = finish(graph, std::move(best), Solver::ACO, start);
  return run;
}

Tour solve_aco(ClusterGraph const &graph, AcoParams const &params, std::uint64_t seed)
{
  return run_aco(graph, params, seed).tour;
}

Tour solve(ClusterGraph const &graph, Solver solver, SolverParams const &params, std::uint64_t seed)
{
  switch (solver)
  {
    case Solver::Exhaustive: return solve_exhaustive(graph, params.exhaustive_cap);
    case Solver::TwoOpt: return solve_two_opt(graph, seed);
    case Solver::GA: return solve_ga(graph, params.ga, seed);
    case Solver::ACO: return solve_aco(graph, params.aco, seed);
  }
  throw DomainError("unknown solver");
}
}  // namespace uavcrowd
