#include "uavcrowd/bench.hpp"

#include "uavcrowd/random.hpp"

#include <fmt/format.h>

#include <atomic>
#include <thread>

namespace uavcrowd
{
namespace
{
inline constexpr std::uint64_t kInstanceStream = 0x1000;

struct Task
{
  std::size_t row;
  std::size_t graph;
  Solver solver;
  std::uint64_t seed;
};
}  // namespace

std::vector<GraphNode> generate_instance(InstanceSpec const &spec, std::uint64_t seed, std::size_t instance_id)
{
  if (spec.min_nodes < 2 || spec.max_nodes < spec.min_nodes)
    throw DomainError("instance node range must satisfy 2 <= min <= max");
  std::size_t const range = spec.max_nodes - spec.min_nodes + 1;
  std::size_t const nodes = spec.min_nodes + instance_id % range;

  Rng rng(derive_seed(seed, kInstanceStream + instance_id));
  std::vector<GraphNode> clusters;
  for (std::size_t k = 1; k < nodes; ++k)
  {
    GraphNode n;
    n.id = static_cast<int>(k);
    n.position = {rng.uniform(0.0, spec.arena_m), rng.uniform(0.0, spec.arena_m)};
    auto const size = rng.integer(spec.min_cluster_size, spec.max_cluster_size);
    n.risk = static_cast<double>(size) + rng.uniform01();
    clusters.push_back(n);
  }
  return clusters;
}

BenchmarkResult run_benchmark(BenchmarkSpec const &spec)
{
  spec.params.validate();
  BenchmarkResult result;
  std::vector<ClusterGraph> graphs;
  std::vector<Task> tasks;

  std::size_t instance_id = 0;
  for (auto seed : spec.seeds)
    for (std::size_t k = 0; k < spec.instances.instances_per_seed; ++k, ++instance_id)
    {
      auto const clusters = generate_instance(spec.instances, seed, instance_id);
      for (double alpha : spec.alphas)
      {
        graphs.push_back(build_graph(clusters, {0.0, 0.0}, alpha));
        auto const &g = graphs.back();
        for (auto solver : spec.solvers)
        {
          if (solver == Solver::Exhaustive && g.size() > spec.params.exhaustive_cap)
          {
            result.notices.push_back(fmt::format("instance {}: exhaustive skipped, |C|={} exceeds cap {}",
                                                 instance_id, g.size(), spec.params.exhaustive_cap));
            continue;
          }
          BenchmarkRow row;
          row.instance_id = instance_id;
          row.nodes = g.size();
          row.solver = solver;
          row.alpha = alpha;
          result.rows.push_back(row);
          tasks.push_back({result.rows.size() - 1, graphs.size() - 1, solver, derive_seed(seed, instance_id)});
        }
      }
    }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t t = next++; t < tasks.size(); t = next++)
    {
      auto const &task = tasks[t];
      auto const tour = solve(graphs[task.graph], task.solver, spec.params, task.seed);
      auto &row = result.rows[task.row];
      row.cost = tour.total_cost;
      row.wall_time_s = tour.wall_time_s;
      row.order = tour.order;
    }
  };
  std::size_t const jobs = std::max<std::size_t>(1, spec.jobs);
  if (jobs == 1)
  {
    worker();
  }
  else
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
      pool.emplace_back(worker);
  }
  return result;
}

void write_benchmark_csv(BenchmarkResult const &result, std::ostream &out)
{
  out << "instance_id,|C|,solver,alpha,cost,wall_time_s\n";
  for (auto const &r : result.rows)
    out << fmt::format("{},{},{},{},{:.17g},{:.9f}\n", r.instance_id, r.nodes, to_string(r.solver), r.alpha, r.cost,
                       r.wall_time_s);
}
}  // namespace uavcrowd
