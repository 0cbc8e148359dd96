#include "uavcrowd/metrics.hpp"

#include "uavcrowd/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace uavcrowd
{
double precision(MatchCounts const &c)
{
  auto const predicted = c.true_positives + c.false_positives;
  return predicted == 0 ? 1.0 : static_cast<double>(c.true_positives) / static_cast<double>(predicted);
}

double recall(MatchCounts const &c)
{
  auto const actual = c.true_positives + c.false_negatives;
  return actual == 0 ? 0.0 : static_cast<double>(c.true_positives) / static_cast<double>(actual);
}

double MatchResult::mean_matched_iou() const
{
  if (matched_ious.empty())
    return 0.0;
  return std::accumulate(matched_ious.begin(), matched_ious.end(), 0.0) / static_cast<double>(matched_ious.size());
}

double iou(BoundingBox const &a, BoundingBox const &b)
{
  double const ix = std::min(a.x_left + a.w, b.x_left + b.w) - std::max(a.x_left, b.x_left);
  double const iy = std::min(a.y_top, b.y_top) - std::max(a.y_top - a.h, b.y_top - b.h);
  if (ix <= 0.0 || iy <= 0.0)
    return 0.0;
  double const overlap = ix * iy;
  double const united = a.w * a.h + b.w * b.h - overlap;
  return united > 0.0 ? overlap / united : 0.0;
}

MatchResult match_detections(std::span<ScoredBox const> predictions,
                             std::span<BoundingBox const> truths,
                             double iou_threshold)
{
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0))
    throw DomainError("IoU threshold must lie in (0, 1)");

  MatchResult result;
  result.prediction_order.resize(predictions.size());
  std::iota(result.prediction_order.begin(), result.prediction_order.end(), std::size_t{0});
  std::stable_sort(result.prediction_order.begin(), result.prediction_order.end(),
                   [&](std::size_t a, std::size_t b) { return predictions[a].score > predictions[b].score; });

  std::vector<bool> truth_used(truths.size(), false);
  result.prediction_matched.reserve(predictions.size());
  for (auto p : result.prediction_order)
  {
    double best = -1.0;
    std::size_t best_truth = truths.size();
    for (std::size_t t = 0; t < truths.size(); ++t)
    {
      if (truth_used[t])
        continue;
      double const v = iou(predictions[p].box, truths[t]);
      if (v >= iou_threshold && v > best)
      {
        best = v;
        best_truth = t;
      }
    }
    bool const matched = best_truth < truths.size();
    if (matched)
    {
      truth_used[best_truth] = true;
      result.matched_ious.push_back(best);
      ++result.counts.true_positives;
    }
    else
    {
      ++result.counts.false_positives;
    }
    result.prediction_matched.push_back(matched);
  }
  result.counts.false_negatives = truths.size() - result.counts.true_positives;
  return result;
}

std::vector<PRPoint> precision_recall_curve(std::span<ScoredBox const> predictions,
                                            std::span<BoundingBox const> truths,
                                            double iou_threshold)
{
  if (truths.empty())
    throw DomainError("precision-recall curve needs at least one ground-truth box");

  // Matching of a prediction only depends on higher-scored predictions, so
  // one greedy pass yields the counts at every score cut.
  auto const match = match_detections(predictions, truths, iou_threshold);
  std::vector<PRPoint> curve;
  MatchCounts running{0, 0, truths.size()};
  for (std::size_t k = 0; k < match.prediction_order.size(); ++k)
  {
    if (match.prediction_matched[k])
    {
      ++running.true_positives;
      --running.false_negatives;
    }
    else
    {
      ++running.false_positives;
    }
    double const score = predictions[match.prediction_order[k]].score;
    bool const last_of_score = k + 1 == match.prediction_order.size()
                            || predictions[match.prediction_order[k + 1]].score != score;
    if (last_of_score)
      curve.push_back({precision(running), recall(running), score, running});
  }
  return curve;
}

double average_precision(std::span<PRPoint const> curve)
{
  if (curve.empty())
    return 0.0;
  std::vector<std::pair<double, double>> pts;  // (recall, precision)
  pts.reserve(curve.size());
  for (auto const &p : curve)
    pts.emplace_back(p.recall, p.precision);
  std::sort(pts.begin(), pts.end());

  // Envelope: precision at recall r is the best precision at any recall >= r.
  for (std::size_t i = pts.size() - 1; i-- > 0;)
    pts[i].second = std::max(pts[i].second, pts[i + 1].second);

  double area = 0.0;
  double prev_recall = 0.0;
  for (auto const &[r, p] : pts)
  {
    area += (r - prev_recall) * p;
    prev_recall = r;
  }
  return area;
}
}  // namespace uavcrowd
