#pragma once

// Reference implementations used only by the tests. Each one takes a
// different route from the library code it checks.

#include "uavcrowd/clustering.hpp"
#include "uavcrowd/metrics.hpp"
#include "uavcrowd/planner.hpp"
#include "uavcrowd/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle
{
using namespace uavcrowd;

/// DBSCAN via boolean transitive closure of the core-point eps-graph.
inline DbscanResult dbscan_closure(std::vector<GroundPoint> const &pts, double eps, std::size_t min_points)
{
  std::size_t const n = pts.size();
  auto near = [&](std::size_t i, std::size_t j) {
    double const dx = pts[i].x - pts[j].x;
    double const dy = pts[i].y - pts[j].y;
    return std::sqrt(dx * dx + dy * dy) <= eps;
  };
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j)
      count += near(i, j) ? 1 : 0;
    core[i] = count >= min_points;
  }
  // reach[i][j]: cores i and j are density-connected.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      reach[i][j] = core[i] && core[j] && near(i, j);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j])
            reach[i][j] = true;

  // Component representative: lowest-index core it reaches.
  std::vector<std::size_t> rep(n, n);
  for (std::size_t i = 0; i < n; ++i)
    if (core[i])
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][j])
        {
          rep[i] = j;
          break;
        }
  for (std::size_t i = 0; i < n; ++i)
    if (!core[i])
      for (std::size_t j = 0; j < n; ++j)
        if (core[j] && near(i, j))
        {
          rep[i] = rep[j];
          break;
        }

  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i)
    if (core[i] && rep[i] == i)
      reps.push_back(i);
  DbscanResult r;
  r.clusters.resize(reps.size());
  for (std::size_t i = 0; i < n; ++i)
  {
    if (rep[i] == n)
    {
      r.outliers.push_back(i);
      continue;
    }
    auto const k = static_cast<std::size_t>(std::find(reps.begin(), reps.end(), rep[i]) - reps.begin());
    r.clusters[k].push_back(i);
  }
  return r;
}

/// Risk score by explicit pair listing with ordered pairs halved.
inline double risk_naive(std::vector<GroundPoint> const &m, double threshold)
{
  double ordered_violations = 0.0;
  double ordered_pairs = 0.0;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
    {
      if (a == b)
        continue;
      ordered_pairs += 1.0;
      if (std::hypot(m[a].x - m[b].x, m[a].y - m[b].y) < threshold)
        ordered_violations += 1.0;
    }
  return ordered_violations / ordered_pairs + static_cast<double>(m.size());
}

/// Edge sum written out from the cost matrix directly.
inline double edge_sum(SquareMatrix const &f, std::vector<std::size_t> const &order)
{
  std::vector<std::size_t> cycle{0};
  cycle.insert(cycle.end(), order.begin(), order.end());
  cycle.push_back(0);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cycle.size(); ++k)
    total += f(cycle[k], cycle[k + 1]);
  return total;
}

/// Minimum tour cost by depth-first enumeration of all orders.
inline double min_tour_dfs(SquareMatrix const &f)
{
  std::size_t const n = f.size();
  std::vector<bool> used(n, false);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> go = [&](std::size_t at, std::size_t depth, double acc) {
    if (depth == n - 1)
    {
      best = std::min(best, acc + f(at, 0));
      return;
    }
    for (std::size_t j = 1; j < n; ++j)
      if (!used[j])
      {
        used[j] = true;
        go(j, depth + 1, acc + f(at, j));
        used[j] = false;
      }
  };
  go(0, 0, 0.0);
  return best;
}

/// Hull vertices by the all-points-on-one-side edge test: (i, j) is a hull
/// edge when no point lies strictly left of i->j and no point lies on the
/// line beyond the segment. Returns the set of endpoints of such edges.
inline std::vector<Point2> hull_vertices_brute(std::vector<Point2> const &pts)
{
  std::vector<Point2> out;
  auto add = [&](Point2 p) {
    if (std::find(out.begin(), out.end(), p) == out.end())
      out.push_back(p);
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
    {
      if (pts[i] == pts[j])
        continue;
      Point2 const e = pts[j] - pts[i];
      bool ok = true;
      for (auto const &r : pts)
      {
        double const c = cross(e, r - pts[i]);
        double const scale = norm(e) * norm(r - pts[i]);
        if (c > 1e-12 * scale)
        {
          ok = false;
          break;
        }
        if (std::abs(c) <= 1e-12 * scale)
        {
          double const t = dot(r - pts[i], e) / dot(e, e);
          if (t < -1e-12 || t > 1.0 + 1e-12)
          {
            ok = false;
            break;
          }
        }
      }
      if (ok)
      {
        add(pts[i]);
        add(pts[j]);
      }
    }
  if (out.empty() && !pts.empty())
    out.push_back(pts.front());
  return out;
}

/// nu(r) = best precision at recall >= r, integrated on a midpoint grid.
inline double ap_grid(std::vector<PRPoint> const &curve, double step = 1e-4)
{
  double area = 0.0;
  for (double r = step / 2.0; r < 1.0; r += step)
  {
    double best = 0.0;
    for (auto const &p : curve)
      if (p.recall >= r)
        best = std::max(best, p.precision);
    area += best * step;
  }
  return area;
}

inline std::vector<GroundPoint> random_points(Rng &rng, std::size_t n, double side)
{
  std::vector<GroundPoint> pts(n);
  for (auto &p : pts)
    p = {rng.uniform(0.0, side), rng.uniform(0.0, side), 0.0};
  return pts;
}
}  // namespace oracle
