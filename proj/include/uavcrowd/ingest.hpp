#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uavcrowd
{
// VisDrone object categories relevant to crowd monitoring.
namespace category
{
inline constexpr int kIgnoredRegion = 0;
inline constexpr int kPedestrian = 1;
inline constexpr int kPeople = 2;
}  // namespace category

/// One annotation line in VisDrone detection order:
/// left, top, width, height, score, category, truncation, occlusion.
/// Coordinates are pixels with the origin at the top-left image corner.
struct RawAnnotation
{
  int bbox_left = 0;
  int bbox_top = 0;
  int bbox_width = 0;
  int bbox_height = 0;
  // 0/1 flag in ground truth files, detector confidence in prediction files.
  double score = 0.0;
  int category = 0;
  int truncation = 0;
  int occlusion = 0;

  friend bool operator==(RawAnnotation const &, RawAnnotation const &) = default;
};

struct LineError
{
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct ImageFrame
{
  int width = 0;
  int height = 0;
  std::vector<RawAnnotation> annotations;
  std::string source_id;
  std::vector<LineError> errors;
};

/// Image-plane rectangle with an upward-positive y axis: y_top is the
/// upper edge, the lower edge sits at y_top - h.
struct BoundingBox
{
  double x_left = 0.0;
  double y_top = 0.0;
  double w = 0.0;
  double h = 0.0;

  friend bool operator==(BoundingBox const &, BoundingBox const &) = default;
};

class ParseError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Parses annotation text. Malformed lines are collected in
/// ImageFrame::errors and skipped; rectangles are clamped to the frame.
/// Throws ParseError if the content is not text or the frame size is invalid.
ImageFrame parse_annotations(std::string_view text,
                             int frame_width,
                             int frame_height,
                             std::string source_id = {});

/// Reads a file and forwards to parse_annotations. Throws ParseError when
/// the file cannot be read.
ImageFrame read_annotation_file(std::string const &path,
                                int frame_width,
                                int frame_height);

/// Frame size from a sidecar JSON file {"width": W, "height": H}.
struct FrameSize
{
  int width = 0;
  int height = 0;
};
FrameSize read_frame_metadata(std::string const &path);

/// Writes annotations back in the same comma-separated layout.
std::string format_annotations(std::vector<RawAnnotation> const &annotations);

bool is_human(int category);

/// Human annotations (pedestrian or people) whose center is not inside any
/// ignored region, still in raw top-down pixel coordinates.
std::vector<RawAnnotation> human_annotations(ImageFrame const &frame);

/// Same selection as human_annotations, converted to BoundingBox with
/// y_top = frame_height - bbox_top.
std::vector<BoundingBox> filter_humans(ImageFrame const &frame);

BoundingBox to_upward_box(RawAnnotation const &a, int frame_height);
}  // namespace uavcrowd
