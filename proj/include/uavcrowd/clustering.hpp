#pragma once

#include "uavcrowd/geometry.hpp"
#include "uavcrowd/mapping.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace uavcrowd
{
struct ClusterParams
{
  double eps = 2.0;            // neighborhood radius [m], closed ball
  std::size_t min_points = 3;  // neighbors including the point itself
  double risk_distance = 2.0;  // pairs strictly closer than this violate distancing

  void validate() const;
};

/// Index partition produced by DBSCAN. Cluster member lists are ascending;
/// clusters are ordered by their lowest-index core point.
struct DbscanResult
{
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> outliers;
};

/// DBSCAN over the (x, y) ground plane. A border point reachable from
/// several clusters joins the cluster of its lowest-index core neighbor.
DbscanResult dbscan(std::span<GroundPoint const> points, ClusterParams const &params);

/// Violating-pair ratio plus cluster size. Requires at least two members.
double risk_score(std::span<GroundPoint const> members, double risk_distance);

Point2 barycenter(std::span<GroundPoint const> members);

struct Cluster
{
  int id = 0;  // 1..K, 0 is the depot
  std::vector<std::size_t> member_indices;
  std::vector<GroundPoint> members;
  Point2 barycenter;
  std::size_t size = 0;
  double risk = 0.0;
};

struct ClusteringResult
{
  std::vector<Cluster> clusters;
  std::vector<std::size_t> outliers;
};

/// DBSCAN followed by per-cluster barycenter and risk score.
ClusteringResult cluster_points(std::span<GroundPoint const> points, ClusterParams const &params);
}  // namespace uavcrowd
