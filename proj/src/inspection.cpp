#include "uavcrowd/inspection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavcrowd
{
namespace
{
// Relative tolerance for treating three points as collinear.
inline constexpr double kCollinearTolerance = 1e-12;

// > 0 when r is left of p->q, < 0 when right, 0 when (nearly) collinear.
int orientation(Point2 p, Point2 q, Point2 r)
{
  Point2 const a = q - p;
  Point2 const b = r - p;
  double const c = cross(a, b);
  if (std::abs(c) <= kCollinearTolerance * norm(a) * norm(b))
    return 0;
  return c > 0.0 ? 1 : -1;
}

double signed_area2(std::span<Point2 const> poly)
{
  double area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    area += cross(poly[i], poly[(i + 1) % poly.size()]);
  return area;
}

Point2 unit_normal_left(Point2 a, Point2 b)
{
  Point2 const d = b - a;
  double const len = norm(d);
  return {-d.y / len, d.x / len};
}

double wrap_two_pi(double angle)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  angle = std::fmod(angle, two_pi);
  return angle < 0.0 ? angle + two_pi : angle;
}

PathLocation nearest_on_segment(Segment const &s, Point2 q)
{
  Point2 const d = s.end - s.start;
  double const len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(q - s.start, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  PathLocation loc;
  loc.parameter = t;
  loc.point = s.at(t);
  loc.distance = distance(loc.point, q);
  return loc;
}

PathLocation nearest_on_arc(Arc const &a, Point2 q)
{
  PathLocation best;
  auto consider = [&](double s) {
    Point2 const p = a.at(s);
    double const d = distance(p, q);
    if (d < best.distance)
    {
      best.parameter = s;
      best.point = p;
      best.distance = d;
    }
  };
  best.distance = std::numeric_limits<double>::infinity();
  consider(0.0);
  consider(1.0);
  Point2 const rel = q - a.center;
  if (norm(rel) > 0.0 && a.sweep != 0.0)
  {
    double const theta = std::atan2(rel.y, rel.x);
    double const travelled = a.sweep < 0.0 ? wrap_two_pi(a.start_angle - theta) : wrap_two_pi(theta - a.start_angle);
    if (travelled <= std::abs(a.sweep))
      consider(travelled / std::abs(a.sweep));
  }
  return best;
}

// Element restricted to parameters [lo, hi].
PathElement sub_element(PathElement const &e, double lo, double hi)
{
  if (auto const *s = std::get_if<Segment>(&e))
    return Segment{s->at(lo), s->at(hi)};
  auto const &a = std::get<Arc>(e);
  return Arc{a.center, a.radius, a.start_angle + lo * a.sweep, (hi - lo) * a.sweep};
}
}  // namespace

double ConvexHull::perimeter() const
{
  if (points.size() < 2)
    return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    total += distance(points[i], points[(i + 1) % points.size()]);
  return total;
}

ConvexHull convex_hull(std::span<Point2 const> input)
{
  if (input.empty())
    throw DomainError("convex hull of an empty point set");

  std::vector<Point2> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  ConvexHull hull;
  if (pts.size() == 1)
  {
    hull.points = pts;
    hull.barycenter = pts.front();
    return hull;
  }

  // pts[0] is the leftmost-lowest point and therefore on the hull. Each step
  // picks the next vertex so that no point lies strictly to its left, which
  // walks the hull clockwise; ties go to the farthest point.
  std::size_t const start = 0;
  std::size_t current = start;
  do
  {
    hull.points.push_back(pts[current]);
    std::size_t candidate = current == 0 ? 1 : 0;
    for (std::size_t r = 0; r < pts.size(); ++r)
    {
      if (r == current || r == candidate)
        continue;
      int const o = orientation(pts[current], pts[candidate], pts[r]);
      if (o > 0)
        candidate = r;
      else if (o == 0 && distance(pts[current], pts[r]) > distance(pts[current], pts[candidate])
               && dot(pts[r] - pts[current], pts[candidate] - pts[current]) > 0.0)
        candidate = r;
    }
    current = candidate;
  } while (current != start && hull.points.size() <= pts.size());

  if (signed_area2(hull.points) > 0.0)
    std::reverse(hull.points.begin() + 1, hull.points.end());

  Point2 sum;
  for (auto const &p : hull.points)
    sum = sum + p;
  hull.barycenter = (1.0 / static_cast<double>(hull.points.size())) * sum;
  return hull;
}

Point2 Arc::at(double s) const
{
  double const angle = start_angle + s * sweep;
  return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}

double element_length(PathElement const &e)
{
  return std::visit([](auto const &x) { return x.length(); }, e);
}

Point2 element_point(PathElement const &e, double s)
{
  return std::visit([s](auto const &x) { return x.at(s); }, e);
}

std::vector<Point2> InspectionPath::sample(std::size_t per_element) const
{
  std::vector<Point2> out;
  std::size_t const k = std::max<std::size_t>(per_element, 2);
  out.reserve(elements.size() * k);
  for (auto const &e : elements)
    for (std::size_t t = 0; t < k; ++t)
      out.push_back(element_point(e, static_cast<double>(t) / static_cast<double>(k - 1)));
  return out;
}

double InspectionPath::max_joint_gap() const
{
  double gap = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i)
    gap = std::max(gap, distance(element_end(elements[i]), element_start(elements[(i + 1) % elements.size()])));
  return gap;
}

InspectionPath offset_path(ConvexHull const &hull, double safety_distance)
{
  if (!(safety_distance > 0.0) || !std::isfinite(safety_distance))
    throw DomainError("safety distance must be positive");
  if (hull.points.empty())
    throw DomainError("offset of an empty hull");

  InspectionPath path;
  path.safety_distance = safety_distance;
  auto const &w = hull.points;
  std::size_t const n = w.size();

  if (n == 1)
  {
    path.elements.push_back(Arc{w[0], safety_distance, std::numbers::pi / 2.0, -2.0 * std::numbers::pi});
  }
  else
  {
    // Outward normal of each edge: the side opposite the barycenter. For a
    // clockwise chain that is the left normal; two-point hulls have the
    // barycenter on the edge and also use the left normal.
    std::vector<Point2> normals(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      Point2 const a = w[i];
      Point2 const b = w[(i + 1) % n];
      Point2 v = unit_normal_left(a, b);
      if (n > 2 && cross(b - a, hull.barycenter - a) > 0.0)
        v = -1.0 * v;
      normals[i] = v;
    }
    for (std::size_t i = 0; i < n; ++i)
    {
      std::size_t const j = (i + 1) % n;
      Point2 const shift = safety_distance * normals[i];
      path.elements.push_back(Segment{w[i] + shift, w[j] + shift});

      Point2 const from = normals[i];
      Point2 const to = normals[j];
      double sweep = std::atan2(cross(from, to), dot(from, to));
      if (n == 2)
        sweep = -std::numbers::pi;
      path.elements.push_back(Arc{w[j], safety_distance, std::atan2(from.y, from.x), sweep});
    }
  }

  for (auto const &e : path.elements)
    path.total_length += element_length(e);
  return path;
}

PathLocation nearest_point(InspectionPath const &path, Point2 query)
{
  if (path.elements.empty())
    throw DomainError("nearest point on an empty path");
  PathLocation best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < path.elements.size(); ++i)
  {
    auto const &e = path.elements[i];
    PathLocation loc = std::holds_alternative<Segment>(e) ? nearest_on_segment(std::get<Segment>(e), query)
                                                          : nearest_on_arc(std::get<Arc>(e), query);
    if (loc.distance < best.distance)
    {
      loc.element = i;
      best = loc;
    }
  }
  return best;
}

InspectionPath rotate_to(InspectionPath const &path, PathLocation const &location)
{
  InspectionPath out;
  out.safety_distance = path.safety_distance;
  std::size_t const n = path.elements.size();
  auto const &split = path.elements[location.element];
  double const s = location.parameter;

  if (s < 1.0)
    out.elements.push_back(s > 0.0 ? sub_element(split, s, 1.0) : split);
  for (std::size_t k = 1; k < n; ++k)
    out.elements.push_back(path.elements[(location.element + k) % n]);
  if (s > 0.0)
    out.elements.push_back(s < 1.0 ? sub_element(split, 0.0, s) : split);

  for (auto const &e : out.elements)
    out.total_length += element_length(e);
  return out;
}

std::vector<int> tour_cluster_ids(Tour const &tour, ClusterGraph const &graph)
{
  std::vector<int> ids;
  ids.reserve(tour.order.size());
  for (auto node : tour.order)
    ids.push_back(graph.nodes.at(node).id);
  return ids;
}

FullTrajectory stitch_full_trajectory(std::span<int const> cluster_order,
                                      std::map<int, InspectionPath> const &paths,
                                      Point2 depot)
{
  FullTrajectory traj;
  traj.depot = depot;
  traj.tour_order.assign(cluster_order.begin(), cluster_order.end());
  if (cluster_order.empty())
    return traj;

  Point2 position = depot;
  int from = 0;
  for (int id : cluster_order)
  {
    auto const it = paths.find(id);
    if (it == paths.end())
      throw DomainError("no inspection path for cluster " + std::to_string(id));
    auto const entry = nearest_point(it->second, position);
    traj.legs.push_back({from, id, position, entry.point, distance(position, entry.point)});
    traj.loops.push_back({id, rotate_to(it->second, entry)});
    position = entry.point;
    from = id;
  }
  traj.legs.push_back({from, 0, position, depot, distance(position, depot)});

  for (auto const &leg : traj.legs)
    traj.transit_length += leg.length;
  for (auto const &loop : traj.loops)
    traj.inspection_length += loop.path.total_length;
  traj.total_length = traj.transit_length + traj.inspection_length;
  return traj;
}
}  // namespace uavcrowd
