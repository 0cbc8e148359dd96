#include "uavcrowd/inspection.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace uavcrowd;

namespace
{
double signed_area(std::vector<Point2> const &p)
{
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    a += cross(p[i], p[(i + 1) % p.size()]);
  return a / 2.0;
}

bool same_set(std::vector<Point2> a, std::vector<Point2> b)
{
  auto lt = [](Point2 u, Point2 v) { return u.x < v.x || (u.x == v.x && u.y < v.y); };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

std::vector<Point2> random_cloud(Rng &rng, std::size_t n, double side)
{
  std::vector<Point2> pts(n);
  for (auto &p : pts)
    p = {rng.uniform(0, side), rng.uniform(0, side)};
  return pts;
}

double min_distance(std::vector<Point2> const &samples, Point2 q)
{
  double best = std::numeric_limits<double>::infinity();
  for (auto const &s : samples)
    best = std::min(best, distance(s, q));
  return best;
}

InspectionPath circle_at(Point2 c, double r)
{
  ConvexHull h;
  h.points = {c};
  h.barycenter = c;
  return offset_path(h, r);
}
}  // namespace

TEST_CASE("triangle is its own clockwise hull")
{
  std::vector<Point2> const pts{{0, 0}, {4, 0}, {1, 3}};
  auto const h = convex_hull(pts);
  REQUIRE(h.points.size() == 3);
  CHECK(same_set(h.points, pts));
  CHECK(signed_area(h.points) < 0.0);
}

TEST_CASE("square corners plus center")
{
  std::vector<Point2> const pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  auto const h = convex_hull(pts);
  CHECK(same_set(h.points, oracle::hull_vertices_brute(pts)));
  CHECK(h.points.size() == 4);
  CHECK(h.perimeter() == doctest::Approx(4.0));
}

TEST_CASE("collinear and repeated inputs")
{
  std::vector<Point2> const line{{2, 2}, {0, 0}, {4, 4}, {1, 1}, {3, 3}};
  auto const h = convex_hull(line);
  CHECK(same_set(h.points, {{0, 0}, {4, 4}}));

  std::vector<Point2> const same{{1, 1}, {1, 1}, {1, 1}};
  CHECK(convex_hull(same).points.size() == 1);

  std::vector<Point2> const edge_points{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 2}};
  CHECK(convex_hull(edge_points).points.size() == 4);
  CHECK_THROWS_AS(convex_hull(std::vector<Point2>{}), DomainError);
}

TEST_CASE("hull matches brute force on random clouds")
{
  Rng rng(3);
  for (int t = 0; t < 200; ++t)
  {
    auto const n = static_cast<std::size_t>(rng.integer(1, 100));
    auto const pts = random_cloud(rng, n, 10);
    auto const h = convex_hull(pts);
    CHECK(same_set(h.points, oracle::hull_vertices_brute(pts)));
    if (h.points.size() >= 3)
    {
      CHECK(signed_area(h.points) < 0.0);
      for (std::size_t i = 0; i < h.points.size(); ++i)
      {
        Point2 const a = h.points[i];
        Point2 const b = h.points[(i + 1) % h.points.size()];
        CHECK(cross(b - a, h.barycenter - a) < 0.0);
        for (auto const &p : pts)
          CHECK(cross(b - a, p - a) <= 1e-9);
      }
    }
  }
}

TEST_CASE("offset path lengths")
{
  std::vector<Point2> const square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto const path = offset_path(convex_hull(square), 2.0);
  CHECK(path.total_length == doctest::Approx(4.0 + 4.0 * std::numbers::pi));
  CHECK(path.total_length == doctest::Approx(16.566).epsilon(1e-4));
  CHECK(path.elements.size() == 8);
  CHECK(path.max_joint_gap() <= 1e-9);

  auto const circle = circle_at({3, 3}, 2.0);
  CHECK(circle.total_length == doctest::Approx(4.0 * std::numbers::pi));
  REQUIRE(circle.elements.size() == 1);
  CHECK(std::holds_alternative<Arc>(circle.elements[0]));

  std::vector<Point2> const pair{{0, 0}, {5, 0}};
  auto const stadium = offset_path(convex_hull(pair), 1.0);
  CHECK(stadium.elements.size() == 4);
  CHECK(stadium.total_length == doctest::Approx(10.0 + 2.0 * std::numbers::pi));
  CHECK(stadium.max_joint_gap() <= 1e-9);

  CHECK_THROWS_AS(offset_path(convex_hull(square), 0.0), DomainError);
  CHECK_THROWS_AS(offset_path(convex_hull(square), -1.0), DomainError);
}

TEST_CASE("offset path properties on random clusters")
{
  Rng rng(4);
  double const d = 2.0;
  for (int t = 0; t < 60; ++t)
  {
    auto const pts = random_cloud(rng, static_cast<std::size_t>(rng.integer(1, 40)), rng.uniform(0.5, 15));
    auto const hull = convex_hull(pts);
    auto const path = offset_path(hull, d);
    auto const samples = path.sample(1000);

    CHECK(path.max_joint_gap() <= 1e-9);
    CHECK(path.total_length == doctest::Approx(hull.perimeter() + 2.0 * std::numbers::pi * d).epsilon(1e-6));
    for (auto const &p : pts)
      CHECK(min_distance(samples, p) >= d - 1e-6);
    for (auto const &w : hull.points)
      CHECK(min_distance(samples, w) <= d + 1e-3);

    // Every translated edge sits on the outward side of its hull edge.
    std::size_t const k = hull.points.size();
    if (k < 2)
      continue;
    for (auto const &e : path.elements)
    {
      auto const *seg = std::get_if<Segment>(&e);
      if (seg == nullptr)
        continue;
      bool found = false;
      for (std::size_t i = 0; i < k && !found; ++i)
      {
        Point2 const a = hull.points[i];
        Point2 const b = hull.points[(i + 1) % k];
        Point2 const shift = seg->start - a;
        if (std::abs(norm(shift) - d) > 1e-9 || distance(seg->end - b, shift) > 1e-9)
          continue;
        found = true;
        CHECK(cross(b - a, shift) > 0.0);
        CHECK(std::abs(dot(b - a, shift)) <= 1e-9 * norm(b - a));
      }
      CHECK(found);
    }
  }
}

TEST_CASE("nearest point and rotation")
{
  auto const circle = circle_at({10, 0}, 2.0);
  auto const loc = nearest_point(circle, {0, 0});
  CHECK(loc.distance == doctest::Approx(8.0));
  CHECK(loc.point.x == doctest::Approx(8.0));
  CHECK(loc.point.y == doctest::Approx(0.0).epsilon(1e-12));

  auto const rotated = rotate_to(circle, loc);
  CHECK(rotated.total_length == doctest::Approx(circle.total_length));
  CHECK(distance(element_start(rotated.elements.front()), loc.point) <= 1e-9);
  CHECK(distance(element_end(rotated.elements.back()), loc.point) <= 1e-9);
  CHECK(rotated.max_joint_gap() <= 1e-9);
}

TEST_CASE("stitching one circle")
{
  std::map<int, InspectionPath> paths{{1, circle_at({10, 0}, 2.0)}};
  std::vector<int> const order{1};
  auto const traj = stitch_full_trajectory(order, paths, {0, 0});
  CHECK(traj.transit_length == doctest::Approx(16.0));
  CHECK(traj.inspection_length == doctest::Approx(4.0 * std::numbers::pi));
  CHECK(traj.total_length == doctest::Approx(16.0 + 4.0 * std::numbers::pi));
  REQUIRE(traj.legs.size() == 2);
  CHECK(traj.legs[0].from == 0);
  CHECK(traj.legs[0].to == 1);
  CHECK(traj.legs[1].to == 0);
}

TEST_CASE("stitching zero clusters")
{
  auto const traj = stitch_full_trajectory({}, {}, {4, 4});
  CHECK(traj.legs.empty());
  CHECK(traj.loops.empty());
  CHECK(traj.total_length == 0.0);
}

TEST_CASE("stitching two clusters is additive and ordered")
{
  std::vector<Point2> const sq{{20, 20}, {22, 20}, {22, 22}, {20, 22}};
  std::map<int, InspectionPath> paths{{1, circle_at({10, 0}, 2.0)}, {2, offset_path(convex_hull(sq), 2.0)}};
  std::vector<int> const order{2, 1};
  auto const traj = stitch_full_trajectory(order, paths, {0, 0});
  REQUIRE(traj.legs.size() == 3);
  REQUIRE(traj.loops.size() == 2);
  CHECK(traj.loops[0].cluster_id == 2);
  CHECK(traj.loops[1].cluster_id == 1);
  CHECK(traj.tour_order == order);

  double legs = 0.0;
  for (auto const &l : traj.legs)
  {
    CHECK(l.length == doctest::Approx(distance(l.start, l.end)));
    legs += l.length;
  }
  double loops = 0.0;
  for (auto const &l : traj.loops)
    loops += l.path.total_length;
  CHECK(traj.transit_length == doctest::Approx(legs));
  CHECK(traj.inspection_length == doctest::Approx(loops));
  CHECK(traj.total_length == doctest::Approx(legs + loops));
  CHECK(traj.inspection_length == doctest::Approx(4.0 * std::numbers::pi + 8.0 + 4.0 * std::numbers::pi));

  CHECK(distance(traj.legs[0].end, element_start(traj.loops[0].path.elements.front())) <= 1e-9);
  CHECK(distance(traj.legs[1].start, element_end(traj.loops[0].path.elements.back())) <= 1e-9);
  CHECK(distance(traj.legs[2].end, Point2{0, 0}) == 0.0);
}

TEST_CASE("stitching a cluster without a path throws")
{
  std::map<int, InspectionPath> paths{{1, circle_at({10, 0}, 2.0)}};
  std::vector<int> const order{1, 2};
  CHECK_THROWS_AS(stitch_full_trajectory(order, paths, {0, 0}), DomainError);
}

TEST_CASE("tour positions map to cluster ids")
{
  std::vector<GraphNode> nodes{{4, {1, 0}, 3}, {9, {2, 0}, 3}};
  auto const g = build_graph(std::span<GraphNode const>(nodes), {0, 0}, 0.0);
  Tour t;
  t.order = {2, 1};
  CHECK(tour_cluster_ids(t, g) == std::vector<int>{9, 4});
}
