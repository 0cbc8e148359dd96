#pragma once

#include "uavcrowd/ingest.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace uavcrowd
{
struct ScoredBox
{
  BoundingBox box;
  double score = 0.0;
};

struct MatchCounts
{
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

// precision is 1 when nothing was predicted; recall is 0 when nothing exists.
double precision(MatchCounts const &c);
double recall(MatchCounts const &c);

struct MatchResult
{
  MatchCounts counts;
  std::vector<double> matched_ious;  // one per true positive
  // Predictions in matching order (descending score, stable) and whether each matched.
  std::vector<std::size_t> prediction_order;
  std::vector<bool> prediction_matched;

  double mean_matched_iou() const;
};

double iou(BoundingBox const &a, BoundingBox const &b);

/// Greedy matching: predictions by descending score, each to the unmatched
/// truth of highest IoU at or above the threshold.
MatchResult match_detections(std::span<ScoredBox const> predictions,
                             std::span<BoundingBox const> truths,
                             double iou_threshold = 0.5);

struct PRPoint
{
  double precision = 1.0;
  double recall = 0.0;
  double threshold = 0.0;  // predictions with score >= threshold are kept
  MatchCounts counts;
};

/// One point per distinct score, from the highest score down. Throws
/// DomainError when there are no truths.
std::vector<PRPoint> precision_recall_curve(std::span<ScoredBox const> predictions,
                                            std::span<BoundingBox const> truths,
                                            double iou_threshold = 0.5);

/// All-point interpolated area under the precision envelope; 0 when empty.
double average_precision(std::span<PRPoint const> curve);
}  // namespace uavcrowd
