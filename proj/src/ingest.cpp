#include "uavcrowd/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace uavcrowd
{
namespace
{
std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true)
  {
    auto const comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  // VisDrone files sometimes carry a trailing comma.
  if (!fields.empty() && fields.back().empty())
    fields.pop_back();
  return fields;
}

bool parse_int(std::string_view s, int &out)
{
  auto const *end = s.data() + s.size();
  auto const [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_double(std::string_view s, double &out)
{
  auto const *end = s.data() + s.size();
  auto const [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

// Returns an empty string on success, otherwise the reason the line is rejected.
std::string parse_line(std::string_view line, int width, int height, RawAnnotation &a)
{
  auto const fields = split_fields(line);
  if (fields.size() < 8)
    return "expected at least 8 fields, got " + std::to_string(fields.size());

  int *int_fields[] = {&a.bbox_left, &a.bbox_top, &a.bbox_width, &a.bbox_height};
  for (std::size_t i = 0; i < 4; ++i)
    if (!parse_int(fields[i], *int_fields[i]))
      return "field " + std::to_string(i + 1) + " is not an integer";
  if (!parse_double(fields[4], a.score))
    return "field 5 (score) is not a number";
  if (!parse_int(fields[5], a.category))
    return "field 6 (category) is not an integer";
  if (!parse_int(fields[6], a.truncation))
    return "field 7 (truncation) is not an integer";
  if (!parse_int(fields[7], a.occlusion))
    return "field 8 (occlusion) is not an integer";

  if (a.bbox_width <= 0)
    return "non-positive bbox width";
  if (a.bbox_height <= 0)
    return "non-positive bbox height";

  long const right = std::min<long>(static_cast<long>(a.bbox_left) + a.bbox_width, width);
  long const bottom = std::min<long>(static_cast<long>(a.bbox_top) + a.bbox_height, height);
  long const left = std::max(a.bbox_left, 0);
  long const top = std::max(a.bbox_top, 0);
  if (right <= left || bottom <= top)
    return "bbox lies outside the frame";

  a.bbox_left = static_cast<int>(left);
  a.bbox_top = static_cast<int>(top);
  a.bbox_width = static_cast<int>(right - left);
  a.bbox_height = static_cast<int>(bottom - top);
  return {};
}

bool center_inside(RawAnnotation const &box, RawAnnotation const &region)
{
  double const cx = box.bbox_left + box.bbox_width / 2.0;
  double const cy = box.bbox_top + box.bbox_height / 2.0;
  return cx >= region.bbox_left && cx <= region.bbox_left + region.bbox_width
      && cy >= region.bbox_top && cy <= region.bbox_top + region.bbox_height;
}

std::string format_score(double score)
{
  if (score == std::floor(score) && std::abs(score) < 1e15)
    return std::to_string(static_cast<long long>(score));
  std::ostringstream os;
  os.precision(17);
  os << score;
  return os.str();
}
}  // namespace

ImageFrame parse_annotations(std::string_view text,
                             int frame_width,
                             int frame_height,
                             std::string source_id)
{
  if (frame_width <= 0 || frame_height <= 0)
    throw ParseError("frame dimensions must be positive");
  if (text.find('\0') != std::string_view::npos)
    throw ParseError("annotation content is not text");

  ImageFrame frame;
  frame.width = frame_width;
  frame.height = frame_height;
  frame.source_id = std::move(source_id);

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size())
  {
    auto const nl = text.find('\n', start);
    auto const line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    ++line_no;
    if (!line.empty())
    {
      RawAnnotation a;
      if (auto reason = parse_line(line, frame_width, frame_height, a); reason.empty())
        frame.annotations.push_back(a);
      else
        frame.errors.push_back({line_no, std::move(reason)});
    }
    if (nl == std::string_view::npos)
      break;
    start = nl + 1;
  }
  return frame;
}

ImageFrame read_annotation_file(std::string const &path, int frame_width, int frame_height)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read annotation file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_annotations(buffer.str(), frame_width, frame_height, path);
}

FrameSize read_frame_metadata(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot read frame metadata: " + path);
  try
  {
    auto const j = nlohmann::json::parse(in);
    FrameSize size{j.at("width").get<int>(), j.at("height").get<int>()};
    if (size.width <= 0 || size.height <= 0)
      throw ParseError("frame metadata must have positive width and height: " + path);
    return size;
  }
  catch (nlohmann::json::exception const &e)
  {
    throw ParseError("malformed frame metadata " + path + ": " + e.what());
  }
}

std::string format_annotations(std::vector<RawAnnotation> const &annotations)
{
  std::string out;
  for (auto const &a : annotations)
  {
    out += std::to_string(a.bbox_left) + ',' + std::to_string(a.bbox_top) + ','
         + std::to_string(a.bbox_width) + ',' + std::to_string(a.bbox_height) + ','
         + format_score(a.score) + ',' + std::to_string(a.category) + ','
         + std::to_string(a.truncation) + ',' + std::to_string(a.occlusion) + '\n';
  }
  return out;
}

bool is_human(int c) { return c == category::kPedestrian || c == category::kPeople; }

std::vector<RawAnnotation> human_annotations(ImageFrame const &frame)
{
  std::vector<RawAnnotation> ignored;
  for (auto const &a : frame.annotations)
    if (a.category == category::kIgnoredRegion)
      ignored.push_back(a);

  std::vector<RawAnnotation> humans;
  for (auto const &a : frame.annotations)
  {
    if (!is_human(a.category))
      continue;
    bool const masked = std::any_of(ignored.begin(), ignored.end(),
                                    [&](RawAnnotation const &r) { return center_inside(a, r); });
    if (!masked)
      humans.push_back(a);
  }
  return humans;
}

BoundingBox to_upward_box(RawAnnotation const &a, int frame_height)
{
  return {static_cast<double>(a.bbox_left),
          static_cast<double>(frame_height - a.bbox_top),
          static_cast<double>(a.bbox_width),
          static_cast<double>(a.bbox_height)};
}

std::vector<BoundingBox> filter_humans(ImageFrame const &frame)
{
  std::vector<BoundingBox> boxes;
  for (auto const &a : human_annotations(frame))
    boxes.push_back(to_upward_box(a, frame.height));
  return boxes;
}
}  // namespace uavcrowd
