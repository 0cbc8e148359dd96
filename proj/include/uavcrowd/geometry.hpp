#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace uavcrowd
{
/// Planar point or vector in meters (ground plane) or pixels (image plane).
struct Point2
{
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point2 const &, Point2 const &) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

// z-component of the 3-D cross product (a, 0) x (b, 0).
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

inline double distance(Point2 a, Point2 b) { return norm(b - a); }

/// Thrown when an operation's precondition on its arguments is violated.
class DomainError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown for configuration and validation failures (CLI exit code 2).
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};
}  // namespace uavcrowd
