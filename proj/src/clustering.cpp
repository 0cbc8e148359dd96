#include "uavcrowd/clustering.hpp"

#include <cmath>
#include <limits>

namespace uavcrowd
{
void ClusterParams::validate() const
{
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ConfigError("eps must be positive");
  if (min_points < 2)
    throw ConfigError("min_points must be at least 2");
  if (!(risk_distance > 0.0) || !std::isfinite(risk_distance))
    throw ConfigError("risk_distance must be positive");
}

DbscanResult dbscan(std::span<GroundPoint const> points, ClusterParams const &params)
{
  std::size_t const n = points.size();
  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (distance(points[i].planar(), points[j].planar()) <= params.eps)
        neighbors[i].push_back(j);

  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i)
    core[i] = neighbors[i].size() >= params.min_points;

  constexpr auto unassigned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(n, unassigned);

  // Expand clusters over core points only, seeded in input order.
  std::size_t next_label = 0;
  for (std::size_t seed = 0; seed < n; ++seed)
  {
    if (!core[seed] || label[seed] != unassigned)
      continue;
    std::vector<std::size_t> frontier{seed};
    label[seed] = next_label;
    while (!frontier.empty())
    {
      auto const p = frontier.back();
      frontier.pop_back();
      for (auto q : neighbors[p])
        if (core[q] && label[q] == unassigned)
        {
          label[q] = next_label;
          frontier.push_back(q);
        }
    }
    ++next_label;
  }

  // Border points: neighbor lists are ascending, so the first core hit is
  // the lowest-index one.
  for (std::size_t i = 0; i < n; ++i)
  {
    if (core[i])
      continue;
    for (auto q : neighbors[i])
      if (core[q])
      {
        label[i] = label[q];
        break;
      }
  }

  DbscanResult result;
  result.clusters.resize(next_label);
  for (std::size_t i = 0; i < n; ++i)
  {
    if (label[i] == unassigned)
      result.outliers.push_back(i);
    else
      result.clusters[label[i]].push_back(i);
  }
  return result;
}

double risk_score(std::span<GroundPoint const> members, double risk_distance)
{
  std::size_t const n = members.size();
  if (n < 2)
    throw DomainError("risk score needs at least two members");
  std::size_t violations = 0;
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = l + 1; k < n; ++k)
      if (distance(members[l].planar(), members[k].planar()) < risk_distance)
        ++violations;
  double const pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return static_cast<double>(violations) / pairs + static_cast<double>(n);
}

Point2 barycenter(std::span<GroundPoint const> members)
{
  if (members.empty())
    throw DomainError("barycenter of an empty set");
  Point2 sum;
  for (auto const &m : members)
  {
    sum.x += m.x;
    sum.y += m.y;
  }
  double const n = static_cast<double>(members.size());
  return {sum.x / n, sum.y / n};
}

ClusteringResult cluster_points(std::span<GroundPoint const> points, ClusterParams const &params)
{
  params.validate();
  auto const partition = dbscan(points, params);

  ClusteringResult result;
  result.outliers = partition.outliers;
  int id = 1;
  for (auto const &indices : partition.clusters)
  {
    Cluster c;
    c.id = id++;
    c.member_indices = indices;
    for (auto i : indices)
      c.members.push_back(points[i]);
    c.size = c.members.size();
    c.barycenter = barycenter(c.members);
    // A core point can end up alone when all its neighbors are border
    // points claimed by lower-index cores; its distancing ratio is 0.
    c.risk = c.size >= 2 ? risk_score(c.members, params.risk_distance) : static_cast<double>(c.size);
    result.clusters.push_back(std::move(c));
  }
  return result;
}
}  // namespace uavcrowd
