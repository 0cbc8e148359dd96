#pragma once

#include "uavcrowd/clustering.hpp"
#include "uavcrowd/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavcrowd
{
/// Dense row-major square matrix.
class SquareMatrix
{
public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct GraphNode
{
  int id = 0;
  Point2 position;
  double risk = 0.0;
};

/// Complete directed graph over the depot (node 0) and the clusters.
/// cost = alpha * priority + (1 - alpha) * energy off the diagonal.
struct ClusterGraph
{
  std::vector<GraphNode> nodes;
  SquareMatrix cost;
  SquareMatrix priority;
  SquareMatrix energy;
  double alpha = 0.0;

  std::size_t size() const { return nodes.size(); }
  double operator()(std::size_t i, std::size_t j) const { return cost(i, j); }
};

/// Graph from the depot position and the non-depot nodes; the depot gets
/// risk 0. Throws DomainError on an empty cluster list or alpha outside [0, 1].
ClusterGraph build_graph(std::span<GraphNode const> clusters, Point2 depot, double alpha);
ClusterGraph build_graph(std::span<Cluster const> clusters, Point2 depot, double alpha);

/// Graph with an explicit cost matrix; node 0 is the depot.
ClusterGraph graph_from_costs(SquareMatrix cost);

enum class Solver
{
  Exhaustive,
  TwoOpt,
  GA,
  ACO,
};

std::string_view to_string(Solver s);
/// Accepts "exhaustive", "two-opt", "ga", "aco". Throws ConfigError otherwise.
Solver parse_solver(std::string_view name);

/// Visiting order over node indices 1..n-1; the depot is implicit at both ends.
struct Tour
{
  std::vector<std::size_t> order;
  double total_cost = 0.0;
  Solver solver = Solver::Exhaustive;
  double wall_time_s = 0.0;
};

struct GaParams
{
  std::size_t population_size = 0;  // 0: twice the node count
  std::size_t generations = 500;
  double mutation_rate = 0.10;
  std::size_t elite_count = 2;
};

struct AcoParams
{
  std::size_t colony_size = 0;  // 0: ceil((n - 1) / 2)
  double delta = 1.0;           // pheromone exponent
  double beta = 5.0;            // visibility exponent
  double q = 10.0;              // deposit intensity
  double rho = 0.5;             // evaporation
  std::size_t iterations = 200;
  double initial_pheromone = 1.0;
};

struct SolverParams
{
  GaParams ga;
  AcoParams aco;
  std::size_t exhaustive_cap = 11;

  void validate() const;
};

/// Throws DomainError unless order is a permutation of 1..n-1.
void check_permutation(ClusterGraph const &graph, std::span<std::size_t const> order);

/// Sum of directed edge costs depot -> order... -> depot.
double tour_cost(ClusterGraph const &graph, std::span<std::size_t const> order);

/// Minimum over all permutations, lexicographically smallest on ties.
/// Refuses graphs with more than `cap` nodes.
Tour solve_exhaustive(ClusterGraph const &graph, std::size_t cap = 11);

/// Best-improvement segment reversal from a seeded random start.
Tour solve_two_opt(ClusterGraph const &graph, std::uint64_t seed);

struct GaRun
{
  Tour tour;
  std::vector<double> best_cost_per_generation;
};

GaRun run_ga(ClusterGraph const &graph, GaParams const &params, std::uint64_t seed);
Tour solve_ga(ClusterGraph const &graph, GaParams const &params, std::uint64_t seed);

struct AcoRun
{
  Tour tour;
  double min_pheromone = 0.0;  // extremes observed over all iterations
  double max_pheromone = 0.0;
};

AcoRun run_aco(ClusterGraph const &graph, AcoParams const &params, std::uint64_t seed);
Tour solve_aco(ClusterGraph const &graph, AcoParams const &params, std::uint64_t seed);

/// Dispatches to one solver.
Tour solve(ClusterGraph const &graph, Solver solver, SolverParams const &params, std::uint64_t seed);

/// Identity order 1..n-1.
std::vector<std::size_t> identity_order(std::size_t node_count);
}  // namespace uavcrowd
