#pragma once

#include "uavcrowd/pipeline.hpp"

#include <string>

namespace uavcrowd
{
/// SVG overview of a report: individuals, cluster hulls, inspection loops,
/// tour legs as arrows, the depot and risk labels. Output bytes depend only
/// on the report contents.
std::string render_svg(PipelineReport const &report);

/// Writes `render_svg(report)`; throws std::runtime_error if the file
/// cannot be written.
void write_svg(PipelineReport const &report, std::string const &path);
}  // namespace uavcrowd
