#include "uavcrowd/render.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

namespace uavcrowd
{
namespace
{
inline constexpr double kCanvas = 800.0;
inline constexpr double kMargin = 60.0;
// Arcs are linearized at this angular step.
inline constexpr double kArcStepRad = 5.0 * std::numbers::pi / 180.0;

struct Bounds
{
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(Point2 p)
  {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  bool empty() const { return !(min_x <= max_x); }
};

std::vector<Point2> linearize(PathElement const &e)
{
  if (auto const *s = std::get_if<Segment>(&e))
    return {s->start, s->end};
  auto const &a = std::get<Arc>(e);
  auto const steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(a.sweep) / kArcStepRad)));
  std::vector<Point2> pts;
  for (std::size_t k = 0; k <= steps; ++k)
    pts.push_back(a.at(static_cast<double>(k) / static_cast<double>(steps)));
  return pts;
}

class Canvas
{
public:
  explicit Canvas(Bounds b) : bounds_(b)
  {
    double const span = std::max({b.max_x - b.min_x, b.max_y - b.min_y, 1e-9});
    scale_ = (kCanvas - 2.0 * kMargin) / span;
  }

  std::string x(double wx) const { return fmt::format("{:.2f}", kMargin + (wx - bounds_.min_x) * scale_); }
  std::string y(double wy) const { return fmt::format("{:.2f}", kCanvas - kMargin - (wy - bounds_.min_y) * scale_); }
  std::string xy(Point2 p) const { return x(p.x) + "," + y(p.y); }

private:
  Bounds bounds_;
  double scale_ = 1.0;
};

Bounds report_bounds(PipelineReport const &r)
{
  Bounds b;
  b.add(r.trajectory.depot);
  for (auto const &p : r.mapping.ground_points)
    b.add(p.planar());
  for (auto const &[id, path] : r.inspection_paths)
    for (auto const &e : path.elements)
      for (auto const &p : linearize(e))
        b.add(p);
  for (auto const &loop : r.trajectory.loops)
    for (auto const &e : loop.path.elements)
      for (auto const &p : linearize(e))
        b.add(p);
  if (b.max_x - b.min_x < 1.0 && b.max_y - b.min_y < 1.0)
  {
    b.add({b.min_x - 10.0, b.min_y - 10.0});
    b.add({b.max_x + 10.0, b.max_y + 10.0});
  }
  return b;
}
}  // namespace

std::string render_svg(PipelineReport const &r)
{
  Bounds const bounds = report_bounds(r);
  Canvas const c(bounds);
  std::string out;
  auto emit = [&out](std::string const &s) { out += s; out += '\n'; };

  emit(fmt::format(R"svg(<svg xmlns="http://www.w3.org/2000/svg" width="{0:.0f}" height="{0:.0f}" viewBox="0 0 {0:.0f} {0:.0f}">)svg", kCanvas));
  emit(R"svg(<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="8" markerHeight="8" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="#1f4e9c"/></marker></defs>)svg");
  emit(R"svg(<rect x="0" y="0" width="100%" height="100%" fill="white"/>)svg");

  // Axes along the lower and left edges of the plotted area.
  emit(R"svg(<g class="axes" stroke="#444" stroke-width="1" font-family="sans-serif" font-size="11" fill="#444">)svg");
  emit(fmt::format(R"svg(<line x1="{}" y1="{}" x2="{}" y2="{}"/>)svg", c.x(bounds.min_x), c.y(bounds.min_y), c.x(bounds.max_x), c.y(bounds.min_y)));
  emit(fmt::format(R"svg(<line x1="{}" y1="{}" x2="{}" y2="{}"/>)svg", c.x(bounds.min_x), c.y(bounds.min_y), c.x(bounds.min_x), c.y(bounds.max_y)));
  emit(fmt::format(R"svg(<text x="{}" y="{}" stroke="none">{:.1f}</text>)svg", c.x(bounds.min_x), fmt::format("{:.2f}", kCanvas - kMargin + 16.0), bounds.min_x));
  emit(fmt::format(R"svg(<text x="{}" y="{}" stroke="none" text-anchor="end">{:.1f}</text>)svg", c.x(bounds.max_x), fmt::format("{:.2f}", kCanvas - kMargin + 16.0), bounds.max_x));
  emit(fmt::format(R"svg(<text x="{:.2f}" y="{}" stroke="none" text-anchor="end">{:.1f}</text>)svg", kMargin - 6.0, c.y(bounds.min_y), bounds.min_y));
  emit(fmt::format(R"svg(<text x="{:.2f}" y="{}" stroke="none" text-anchor="end">{:.1f}</text>)svg", kMargin - 6.0, c.y(bounds.max_y), bounds.max_y));
  emit(fmt::format(R"svg(<text x="{:.2f}" y="{:.2f}" stroke="none" text-anchor="middle">x [m]</text>)svg", kCanvas / 2.0, kCanvas - 20.0));
  emit(fmt::format(R"svg(<text x="20" y="{:.2f}" stroke="none" text-anchor="middle" transform="rotate(-90 20 {:.2f})">y [m]</text>)svg", kCanvas / 2.0, kCanvas / 2.0));
  emit("</g>");

  emit(R"svg(<g class="legend" font-family="sans-serif" font-size="12">)svg");
  emit(R"svg(<circle cx="20" cy="20" r="3" fill="#c0392b"/><text x="30" y="24">individual</text>)svg");
  emit(R"svg(<line x1="120" y1="20" x2="140" y2="20" stroke="#888" stroke-dasharray="4 2"/><text x="146" y="24">hull</text>)svg");
  emit(R"svg(<line x1="190" y1="20" x2="210" y2="20" stroke="#27ae60" stroke-width="2"/><text x="216" y="24">inspection loop</text>)svg");
  emit(R"svg(<line x1="330" y1="20" x2="350" y2="20" stroke="#1f4e9c" stroke-width="1.5"/><text x="356" y="24">tour leg</text>)svg");
  emit(R"svg(<rect x="430" y="15" width="10" height="10" fill="#222"/><text x="446" y="24">depot</text>)svg");
  emit("</g>");

  for (auto const &h : r.hulls)
  {
    if (h.points.size() < 2)
      continue;
    std::string pts;
    for (auto const &p : h.points)
      pts += (pts.empty() ? "" : " ") + c.xy(p);
    emit(fmt::format(R"svg(<polygon class="hull" points="{}" fill="none" stroke="#888" stroke-dasharray="4 2"/>)svg", pts));
  }

  // Stitched loops when a trajectory exists, otherwise the raw per-cluster paths.
  std::vector<InspectionPath const *> loops;
  if (!r.trajectory.loops.empty())
    for (auto const &l : r.trajectory.loops)
      loops.push_back(&l.path);
  else
    for (auto const &[id, p] : r.inspection_paths)
      loops.push_back(&p);
  for (auto const *path : loops)
  {
    std::string d;
    for (auto const &e : path->elements)
      for (auto const &p : linearize(e))
        d += (d.empty() ? "M" : " L") + c.xy(p);
    emit(fmt::format(R"svg(<path class="loop" d="{} Z" fill="none" stroke="#27ae60" stroke-width="2"/>)svg", d));
  }

  for (auto const &leg : r.trajectory.legs)
    emit(fmt::format(R"svg(<line class="leg" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#1f4e9c" stroke-width="1.5" marker-end="url(#arrow)"/>)svg",
                     c.x(leg.start.x), c.y(leg.start.y), c.x(leg.end.x), c.y(leg.end.y)));

  std::vector<bool> is_outlier(r.mapping.ground_points.size(), false);
  for (auto i : r.clustering.outliers)
    if (i < is_outlier.size())
      is_outlier[i] = true;
  for (std::size_t i = 0; i < r.mapping.ground_points.size(); ++i)
  {
    auto const &p = r.mapping.ground_points[i];
    emit(fmt::format(R"svg(<circle class="{}" cx="{}" cy="{}" r="3" fill="{}"/>)svg", is_outlier[i] ? "outlier" : "individual",
                     c.x(p.x), c.y(p.y), is_outlier[i] ? "#999" : "#c0392b"));
  }

  emit(fmt::format(R"svg(<rect class="depot" x="{:.2f}" y="{:.2f}" width="10" height="10" fill="#222"/>)svg",
                   std::stod(c.x(r.trajectory.depot.x)) - 5.0, std::stod(c.y(r.trajectory.depot.y)) - 5.0));

  for (auto const &cl : r.clustering.clusters)
    emit(fmt::format(R"svg(<text class="risk" x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">#{} &#955;={:.2f}</text>)svg",
                     c.x(cl.barycenter.x), c.y(cl.barycenter.y), cl.id, cl.risk));

  emit("</svg>");
  return out;
}

void write_svg(PipelineReport const &report, std::string const &path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write SVG: " + path);
  out << render_svg(report);
  if (!out)
    throw std::runtime_error("failed writing SVG: " + path);
}
}  // namespace uavcrowd
