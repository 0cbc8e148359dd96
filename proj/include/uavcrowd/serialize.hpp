#pragma once

#include "uavcrowd/pipeline.hpp"

#include <json.hpp>

namespace uavcrowd
{
using nlohmann::json;

void to_json(json &j, Point2 const &p);
void from_json(json const &j, Point2 &p);
void to_json(json &j, GroundPoint const &p);
void from_json(json const &j, GroundPoint &p);
void to_json(json &j, BoundingBox const &b);
void from_json(json const &j, BoundingBox &b);
void to_json(json &j, Anchor const &a);
void from_json(json const &j, Anchor &a);
void to_json(json &j, Cluster const &c);
void from_json(json const &j, Cluster &c);
void to_json(json &j, Tour const &t);
void from_json(json const &j, Tour &t);
void to_json(json &j, ConvexHull const &h);
void from_json(json const &j, ConvexHull &h);
void to_json(json &j, PathElement const &e);
void from_json(json const &j, PathElement &e);
void to_json(json &j, InspectionPath const &p);
void from_json(json const &j, InspectionPath &p);
void to_json(json &j, FullTrajectory const &t);
void from_json(json const &j, FullTrajectory &t);

/// Applies the keys present in a flat config object on top of `config`.
/// Unknown keys and ill-typed values raise ConfigError.
void apply_config_json(json const &j, PipelineConfig &config);
json config_to_json(PipelineConfig const &config);
PipelineConfig read_config_file(std::string const &path, PipelineConfig base = {});

/// Report without wall-clock data, so identical runs serialize identically.
json report_to_json(PipelineReport const &report);
PipelineReport report_from_json(json const &j);
json timings_to_json(StageTimings const &t);

/// Deterministic text form used for every file the tools write.
std::string dump(json const &j);
}  // namespace uavcrowd
