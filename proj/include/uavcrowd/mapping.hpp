#pragma once

#include "uavcrowd/geometry.hpp"
#include "uavcrowd/ingest.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace uavcrowd
{
/// Pinhole camera parameters. The optical axis is assumed parallel to the
/// ground and to pierce the image plane at the horizontal frame center.
struct CameraIntrinsics
{
  double focal_length_m = 0.010;
  double pixel_size_m = 18e-6;
  double assumed_height_m = 1.75;

  void validate() const;
};

/// Ground-contact anchor of a box: horizontal center and bottom edge.
struct Anchor
{
  double x_center = 0.0;
  double y_bottom = 0.0;
  double h = 0.0;
  std::optional<double> h_c;
  // Set when the fitted model predicted a non-positive height and the
  // original height was kept.
  bool correction_rejected = false;

  /// Height used for mapping: corrected when available, original otherwise.
  double effective_height() const { return h_c.value_or(h); }
};

/// Least-squares fit h ~ a0 + a1*y + a2*y^2 over the boxes of one image.
struct QuadraticHeightModel
{
  std::array<double, 3> coefficients{};  // a0 [px], a1 [-], a2 [1/px]
  std::vector<double> residuals;         // h - g(y_bottom), input order
  std::size_t sample_count = 0;

  double evaluate(double y_bottom) const
  {
    return coefficients[0] + y_bottom * (coefficients[1] + y_bottom * coefficients[2]);
  }
};

/// Fewer than three usable samples or a numerically singular fit.
class CorrectionUnavailable : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Estimated ground position in meters. x is lateral (signed), y is depth.
struct GroundPoint
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point2 planar() const { return {x, y}; }
  friend bool operator==(GroundPoint const &, GroundPoint const &) = default;
};

Anchor box_anchor(BoundingBox const &box);

QuadraticHeightModel fit_height_model(std::span<Anchor const> anchors);

/// Projects heights onto the fitted curve. Anchors whose prediction is not
/// positive keep h_c = h and get correction_rejected set.
std::vector<Anchor> correct_heights(QuadraticHeightModel const &model,
                                    std::span<Anchor const> anchors);

GroundPoint map_to_ground(Anchor const &anchor, CameraIntrinsics const &cam, double frame_width);

/// Output of the per-frame mapping stage.
struct MappedFrame
{
  std::vector<Anchor> anchors;  // corrected when a model was available
  std::optional<QuadraticHeightModel> model;
  std::vector<GroundPoint> ground_points;
};

/// Anchors, per-frame height correction (falling back to raw heights when
/// the fit is unavailable) and ground mapping for every box.
MappedFrame map_frame(std::span<BoundingBox const> boxes,
                      CameraIntrinsics const &cam,
                      double frame_width,
                      bool correct = true);
}  // namespace uavcrowd
