#include "uavcrowd/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace uavcrowd
{
namespace
{
using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point a, Clock::time_point b)
{
  return std::chrono::duration<double>(b - a).count();
}
}  // namespace

void PipelineConfig::validate() const
{
  camera.validate();
  cluster.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ConfigError("alpha must lie in [0, 1]");
  if (!(safety_distance > 0.0) || !std::isfinite(safety_distance))
    throw ConfigError("safety distance must be positive");
  if (!std::isfinite(depot.x) || !std::isfinite(depot.y))
    throw ConfigError("depot must be finite");
  solver_params.validate();
}

PipelineReport run_pipeline(std::string_view annotation_text,
                            FrameSize frame,
                            PipelineConfig const &config,
                            std::string source_id)
{
  config.validate();

  PipelineReport report;
  report.source_id = source_id;
  report.frame_width = frame.width;
  report.frame_height = frame.height;
  report.trajectory.depot = config.depot;

  // Stage boundaries share timestamps so the stage times add up to the total.
  auto const t0 = Clock::now();
  try
  {
    auto parsed = parse_annotations(annotation_text, frame.width, frame.height, std::move(source_id));
    report.parse_errors = std::move(parsed.errors);
    report.boxes = filter_humans(parsed);
  }
  catch (std::exception const &e)
  {
    throw StageError("ingest", e.what());
  }
  auto const t1 = Clock::now();

  try
  {
    report.mapping = map_frame(report.boxes, config.camera, frame.width, config.correct_heights);
  }
  catch (std::exception const &e)
  {
    throw StageError("mapping", e.what());
  }
  auto const t2 = Clock::now();

  try
  {
    report.clustering = cluster_points(report.mapping.ground_points, config.cluster);
  }
  catch (std::exception const &e)
  {
    throw StageError("clustering", e.what());
  }
  auto const t3 = Clock::now();

  std::optional<ClusterGraph> graph;
  try
  {
    if (!report.clustering.clusters.empty())
    {
      graph = build_graph(report.clustering.clusters, config.depot, config.alpha);
      if (config.all_solvers)
      {
        for (auto s : {Solver::Exhaustive, Solver::TwoOpt, Solver::GA, Solver::ACO})
        {
          if (s == Solver::Exhaustive && graph->size() > config.solver_params.exhaustive_cap)
            continue;
          report.tours.push_back(solve(*graph, s, config.solver_params, config.seed));
        }
      }
      else
      {
        report.tours.push_back(solve(*graph, config.solver, config.solver_params, config.seed));
      }
      report.chosen_tour = report.tours.front();
      for (auto const &t : report.tours)
        if (t.total_cost < report.chosen_tour->total_cost)
          report.chosen_tour = t;
    }
  }
  catch (std::exception const &e)
  {
    throw StageError("planning", e.what());
  }
  auto const t4 = Clock::now();

  try
  {
    for (auto const &c : report.clustering.clusters)
    {
      std::vector<Point2> pts;
      pts.reserve(c.members.size());
      for (auto const &m : c.members)
        pts.push_back(m.planar());
      report.hulls.push_back(convex_hull(pts));
      report.inspection_paths.emplace(c.id, offset_path(report.hulls.back(), config.safety_distance));
    }
    if (report.chosen_tour)
    {
      auto const order = tour_cluster_ids(*report.chosen_tour, *graph);
      report.trajectory = stitch_full_trajectory(order, report.inspection_paths, config.depot);
    }
  }
  catch (std::exception const &e)
  {
    throw StageError("inspection", e.what());
  }
  auto const t5 = Clock::now();

  report.timings.ingest_s = seconds(t0, t1);
  report.timings.mapping_s = seconds(t1, t2);
  report.timings.clustering_s = seconds(t2, t3);
  report.timings.planning_s = seconds(t3, t4);
  report.timings.inspection_s = seconds(t4, t5);
  report.timings.total_s = seconds(t0, t5);
  return report;
}

PipelineReport run_pipeline_file(std::string const &annotation_path,
                                 FrameSize frame,
                                 PipelineConfig const &config)
{
  config.validate();
  std::ifstream in(annotation_path, std::ios::binary);
  if (!in)
    throw StageError("ingest", "cannot read annotation file: " + annotation_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return run_pipeline(buffer.str(), frame, config, annotation_path);
}
}  // namespace uavcrowd
