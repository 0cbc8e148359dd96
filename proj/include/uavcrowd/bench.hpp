#pragma once

#include "uavcrowd/planner.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace uavcrowd
{
/// Random cluster-graph instances: barycenters uniform in a square arena
/// [0, arena]^2, depot at the origin, risk = size + ratio with the size
/// uniform in [min_cluster_size, max_cluster_size] and the ratio in [0, 1].
struct InstanceSpec
{
  std::size_t min_nodes = 4;  // node counts include the depot
  std::size_t max_nodes = 9;
  std::size_t instances_per_seed = 1;
  double arena_m = 100.0;
  int min_cluster_size = 3;
  int max_cluster_size = 12;
};

struct BenchmarkSpec
{
  InstanceSpec instances;
  std::vector<std::uint64_t> seeds{0};
  std::vector<double> alphas{0.99};
  std::vector<Solver> solvers{Solver::Exhaustive, Solver::TwoOpt, Solver::GA, Solver::ACO};
  SolverParams params;
  std::size_t jobs = 1;
};

struct BenchmarkRow
{
  std::size_t instance_id = 0;
  std::size_t nodes = 0;
  Solver solver = Solver::TwoOpt;
  double alpha = 0.0;
  double cost = 0.0;
  double wall_time_s = 0.0;
  std::vector<std::size_t> order;
};

struct BenchmarkResult
{
  std::vector<BenchmarkRow> rows;  // instance, alpha, solver order
  std::vector<std::string> notices;
};

/// Instance `instance_id` of a run: node count cycles through
/// [min_nodes, max_nodes] with the instance id.
std::vector<GraphNode> generate_instance(InstanceSpec const &spec, std::uint64_t seed, std::size_t instance_id);

BenchmarkResult run_benchmark(BenchmarkSpec const &spec);

/// Header: instance_id,|C|,solver,alpha,cost,wall_time_s
void write_benchmark_csv(BenchmarkResult const &result, std::ostream &out);
}  // namespace uavcrowd
