#include "uavcrowd/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace uavcrowd
{
namespace
{
inline constexpr double kMaxConditionNumber = 1e12;

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Vector3 = std::array<double, 3>;

double norm1(Matrix3 const &m)
{
  double best = 0.0;
  for (std::size_t c = 0; c < 3; ++c)
    best = std::max(best, std::abs(m[0][c]) + std::abs(m[1][c]) + std::abs(m[2][c]));
  return best;
}

// Gauss-Jordan with partial pivoting on [m | I | rhs]; returns false if a
// pivot vanishes. Fills the inverse for the condition estimate.
bool solve3(Matrix3 m, Vector3 rhs, Vector3 &x, Matrix3 &inverse)
{
  Matrix3 inv{};
  for (std::size_t i = 0; i < 3; ++i)
    inv[i][i] = 1.0;

  for (std::size_t col = 0; col < 3; ++col)
  {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col]))
        pivot = r;
    if (m[pivot][col] == 0.0)
      return false;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    std::swap(rhs[pivot], rhs[col]);

    double const d = m[col][col];
    for (std::size_t c = 0; c < 3; ++c)
    {
      m[col][c] /= d;
      inv[col][c] /= d;
    }
    rhs[col] /= d;

    for (std::size_t r = 0; r < 3; ++r)
    {
      if (r == col)
        continue;
      double const f = m[r][col];
      for (std::size_t c = 0; c < 3; ++c)
      {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
      rhs[r] -= f * rhs[col];
    }
  }
  x = rhs;
  inverse = inv;
  return true;
}
}  // namespace

void CameraIntrinsics::validate() const
{
  if (!(focal_length_m > 0.0) || !std::isfinite(focal_length_m))
    throw ConfigError("focal length must be positive");
  if (!(pixel_size_m > 0.0) || !std::isfinite(pixel_size_m))
    throw ConfigError("pixel size must be positive");
  if (!(assumed_height_m > 0.0) || !std::isfinite(assumed_height_m))
    throw ConfigError("assumed height must be positive");
}

Anchor box_anchor(BoundingBox const &box)
{
  Anchor a;
  a.x_center = box.x_left + box.w / 2.0;
  a.y_bottom = box.y_top - box.h;
  a.h = box.h;
  return a;
}

QuadraticHeightModel fit_height_model(std::span<Anchor const> anchors)
{
  if (anchors.size() < 3)
    throw CorrectionUnavailable("height correction needs at least 3 boxes, got "
                                + std::to_string(anchors.size()));
  std::set<double> distinct;
  for (auto const &a : anchors)
    distinct.insert(a.y_bottom);
  if (distinct.size() < 3)
    throw CorrectionUnavailable("height correction needs at least 3 distinct bottom rows");

  // Work in t = (y - mean) / spread so the normal matrix stays well scaled
  // for image rows in the thousands.
  double mean = 0.0;
  for (auto const &a : anchors)
    mean += a.y_bottom;
  mean /= static_cast<double>(anchors.size());
  double spread = 0.0;
  for (auto const &a : anchors)
    spread = std::max(spread, std::abs(a.y_bottom - mean));

  Matrix3 normal{};
  Vector3 rhs{};
  for (auto const &a : anchors)
  {
    double const t = (a.y_bottom - mean) / spread;
    double const powers[5] = {1.0, t, t * t, t * t * t, t * t * t * t};
    for (std::size_t r = 0; r < 3; ++r)
    {
      for (std::size_t c = 0; c < 3; ++c)
        normal[r][c] += powers[r + c];
      rhs[r] += a.h * powers[r];
    }
  }

  Vector3 b{};
  Matrix3 inverse{};
  if (!solve3(normal, rhs, b, inverse))
    throw CorrectionUnavailable("height regression normal system is singular");
  double const cond = norm1(normal) * norm1(inverse);
  if (!std::isfinite(cond) || cond > kMaxConditionNumber)
    throw CorrectionUnavailable("height regression normal system is ill-conditioned");

  QuadraticHeightModel model;
  double const s2 = spread * spread;
  model.coefficients[2] = b[2] / s2;
  model.coefficients[1] = b[1] / spread - 2.0 * b[2] * mean / s2;
  model.coefficients[0] = b[0] - b[1] * mean / spread + b[2] * mean * mean / s2;
  for (double c : model.coefficients)
    if (!std::isfinite(c))
      throw CorrectionUnavailable("height regression produced non-finite coefficients");

  model.sample_count = anchors.size();
  model.residuals.reserve(anchors.size());
  for (auto const &a : anchors)
    model.residuals.push_back(a.h - model.evaluate(a.y_bottom));
  return model;
}

std::vector<Anchor> correct_heights(QuadraticHeightModel const &model, std::span<Anchor const> anchors)
{
  std::vector<Anchor> out(anchors.begin(), anchors.end());
  for (auto &a : out)
  {
    double const g = model.evaluate(a.y_bottom);
    if (g > 0.0 && std::isfinite(g))
    {
      a.h_c = g;
      a.correction_rejected = false;
    }
    else
    {
      a.h_c = a.h;
      a.correction_rejected = true;
    }
  }
  return out;
}

GroundPoint map_to_ground(Anchor const &anchor, CameraIntrinsics const &cam, double frame_width)
{
  double const h_px = anchor.effective_height();
  if (!(h_px > 0.0))
    throw DomainError("cannot map an anchor with non-positive height");

  double const h_sensor = cam.pixel_size_m * h_px;
  double const x_sensor = cam.pixel_size_m * (anchor.x_center - frame_width / 2.0);
  GroundPoint p;
  p.y = cam.assumed_height_m * cam.focal_length_m / h_sensor;
  p.x = x_sensor * cam.assumed_height_m / h_sensor;
  p.z = 0.0;
  return p;
}

MappedFrame map_frame(std::span<BoundingBox const> boxes,
                      CameraIntrinsics const &cam,
                      double frame_width,
                      bool correct)
{
  MappedFrame out;
  out.anchors.reserve(boxes.size());
  for (auto const &b : boxes)
    out.anchors.push_back(box_anchor(b));

  if (correct)
  {
    try
    {
      out.model = fit_height_model(out.anchors);
      out.anchors = correct_heights(*out.model, out.anchors);
    }
    catch (CorrectionUnavailable const &)
    {
      out.model.reset();
    }
  }

  out.ground_points.reserve(out.anchors.size());
  for (auto const &a : out.anchors)
    out.ground_points.push_back(map_to_ground(a, cam, frame_width));
  return out;
}
}  // namespace uavcrowd
