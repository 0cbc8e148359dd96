#pragma once

#include "uavcrowd/clustering.hpp"
#include "uavcrowd/ingest.hpp"
#include "uavcrowd/inspection.hpp"
#include "uavcrowd/mapping.hpp"
#include "uavcrowd/planner.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uavcrowd
{
struct PipelineConfig
{
  CameraIntrinsics camera;
  ClusterParams cluster;
  double alpha = 0.99;
  double safety_distance = 2.0;
  Solver solver = Solver::TwoOpt;
  bool all_solvers = false;  // run every applicable solver, keep the cheapest
  bool correct_heights = true;
  std::uint64_t seed = 0;
  Point2 depot;
  SolverParams solver_params;

  /// Throws ConfigError on the first invalid field.
  void validate() const;
};

/// Error raised inside a pipeline stage, tagged with the stage name.
class StageError : public std::runtime_error
{
public:
  StageError(std::string stage, std::string const &what)
    : std::runtime_error(stage + ": " + what), stage_(std::move(stage))
  {
  }
  std::string const &stage() const { return stage_; }

private:
  std::string stage_;
};

struct StageTimings
{
  double ingest_s = 0.0;
  double mapping_s = 0.0;
  double clustering_s = 0.0;
  double planning_s = 0.0;
  double inspection_s = 0.0;
  double total_s = 0.0;
};

struct PipelineReport
{
  std::string source_id;
  int frame_width = 0;
  int frame_height = 0;
  std::vector<LineError> parse_errors;
  std::vector<BoundingBox> boxes;  // humans after filtering, upward y
  MappedFrame mapping;
  ClusteringResult clustering;
  std::vector<Tour> tours;  // every solver that ran
  std::optional<Tour> chosen_tour;
  std::vector<ConvexHull> hulls;  // parallel to clustering.clusters
  std::map<int, InspectionPath> inspection_paths;
  FullTrajectory trajectory;
  StageTimings timings;
};

PipelineReport run_pipeline(std::string_view annotation_text,
                            FrameSize frame,
                            PipelineConfig const &config,
                            std::string source_id = {});

/// Reads the annotation file and runs the pipeline; I/O failures are
/// reported as StageError("ingest", ...).
PipelineReport run_pipeline_file(std::string const &annotation_path,
                                 FrameSize frame,
                                 PipelineConfig const &config);
}  // namespace uavcrowd
