// Small 2D geometric primitives shared by the mesh and basis layers.

#ifndef WG_GEOMETRY_HPP
#define WG_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace wg
{

using Vec2 = Eigen::Vector2d;

/// Signed (shoelace) area of a closed polygon given by its vertex loop.
inline double signed_area(const std::vector<Vec2> &loop)
{
  double a = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; i++) {
    const Vec2 &p = loop[i];
    const Vec2 &q = loop[(i + 1) % n];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

/// 2D cross product p x q = p1*q2 - p2*q1.
inline double cross2(const Vec2 &p, const Vec2 &q)
{
  return p.x() * q.y() - p.y() * q.x();
}

/// Diameter of a vertex set (max pairwise distance).
inline double diameter(const std::vector<Vec2> &pts)
{
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); i++) {
    for (std::size_t j = i + 1; j < pts.size(); j++) {
      d = std::max(d, (pts[i] - pts[j]).norm());
    }
  }
  return d;
}

/// Area-weighted centroid of a simple polygon.
inline Vec2 polygon_centroid(const std::vector<Vec2> &loop)
{
  double a = 0.0;
  Vec2 c = Vec2::Zero();
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; i++) {
    const Vec2 &p = loop[i];
    const Vec2 &q = loop[(i + 1) % n];
    const double w = cross2(p, q);
    a += w;
    c += w * (p + q);
  }
  return c / (3.0 * a);
}

/// Strict point-in-triangle test with tolerance (used by ear clipping).
inline bool point_in_triangle(const Vec2 &p, const Vec2 &a, const Vec2 &b, const Vec2 &c,
                              double tol = 1e-14)
{
  const double d1 = cross2(b - a, p - a);
  const double d2 = cross2(c - b, p - b);
  const double d3 = cross2(a - c, p - c);
  return (d1 >= -tol) && (d2 >= -tol) && (d3 >= -tol);
}

} // namespace wg

#endif
