#pragma once

#include "uavcrowd/geometry.hpp"
#include "uavcrowd/planner.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <variant>
#include <vector>

namespace uavcrowd
{
/// Hull vertices in clockwise order without collinear vertices. One or two
/// vertices for degenerate inputs.
struct ConvexHull
{
  std::vector<Point2> points;
  Point2 barycenter;  // mean of the hull vertices

  double perimeter() const;
};

/// Gift wrapping (Jarvis march), normalized to clockwise order.
ConvexHull convex_hull(std::span<Point2 const> points);

struct Segment
{
  Point2 start;
  Point2 end;

  double length() const { return distance(start, end); }
  Point2 at(double s) const { return start + s * (end - start); }  // s in [0, 1]
};

/// Circular arc; sweep is signed in radians, negative for clockwise.
struct Arc
{
  Point2 center;
  double radius = 0.0;
  double start_angle = 0.0;
  double sweep = 0.0;

  double length() const { return radius * std::abs(sweep); }
  Point2 at(double s) const;  // s in [0, 1]
};

using PathElement = std::variant<Segment, Arc>;

double element_length(PathElement const &e);
Point2 element_point(PathElement const &e, double s);
inline Point2 element_start(PathElement const &e) { return element_point(e, 0.0); }
inline Point2 element_end(PathElement const &e) { return element_point(e, 1.0); }

/// Closed clockwise loop of offset segments and vertex-centred arcs.
struct InspectionPath
{
  std::vector<PathElement> elements;
  double total_length = 0.0;
  double safety_distance = 0.0;

  /// Evenly spaced points along each element, `per_element` per element,
  /// arcs included at both ends.
  std::vector<Point2> sample(std::size_t per_element) const;
  /// Largest gap between the end of an element and the start of the next.
  double max_joint_gap() const;
};

/// Translates each hull edge outward by d_S and joins consecutive edges with
/// arcs of radius d_S centred at the hull vertices. One-point hulls give a
/// circle, two-point hulls a stadium. Throws DomainError if d_S <= 0.
InspectionPath offset_path(ConvexHull const &hull, double safety_distance);

/// Closest point on a path and where it lies.
struct PathLocation
{
  std::size_t element = 0;
  double parameter = 0.0;  // in [0, 1] within the element
  Point2 point;
  double distance = 0.0;
};
PathLocation nearest_point(InspectionPath const &path, Point2 query);

/// The same loop traversed from `location`; the element at the location is
/// split so the new path starts and ends exactly there.
InspectionPath rotate_to(InspectionPath const &path, PathLocation const &location);

/// Direct transit between two stops; node id 0 is the depot.
struct TransitLeg
{
  int from = 0;
  int to = 0;
  Point2 start;
  Point2 end;
  double length = 0.0;
};

struct InspectionLoop
{
  int cluster_id = 0;
  InspectionPath path;  // starts and ends at the entry point
};

struct FullTrajectory
{
  Point2 depot;
  std::vector<int> tour_order;  // cluster ids
  std::vector<TransitLeg> legs;
  std::vector<InspectionLoop> loops;
  double transit_length = 0.0;
  double inspection_length = 0.0;
  double total_length = 0.0;
};

/// Cluster ids in tour order (graph node index -> node id).
std::vector<int> tour_cluster_ids(Tour const &tour, ClusterGraph const &graph);

/// Depot, then for each cluster in `cluster_order`: fly to the loop point
/// nearest the current position, fly the full loop, continue; finally back
/// to the depot. `paths` is keyed by cluster id. Throws DomainError if a
/// cluster in the order has no path.
FullTrajectory stitch_full_trajectory(std::span<int const> cluster_order,
                                      std::map<int, InspectionPath> const &paths,
                                      Point2 depot);
}  // namespace uavcrowd
