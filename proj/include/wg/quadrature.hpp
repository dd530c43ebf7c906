// Quadrature: Gauss-Legendre rules of arbitrary order on [0,1], collapsed
// (Duffy) tensor rules on triangles, and composite rules on (non-convex)
// polygons via ear-clipping triangulation.

#ifndef WG_QUADRATURE_HPP
#define WG_QUADRATURE_HPP

#include "wg/geometry.hpp"
#include "wg/mesh.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <vector>

namespace wg
{

/// Gauss-Legendre nodes/weights on [0,1], exact for degree <= 2n-1.
/// Newton iteration on P_n with the three-term recurrence.
inline void gauss_legendre(int n, Eigen::VectorXd &nodes, Eigen::VectorXd &weights)
{
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; i++) {
    // Chebyshev initial guess on [-1,1]
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; it++) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; j++) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = 0.5 * (1.0 - x); // descending x -> ascending node
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[n - 1 - i] = 0.5 * w;
  }
}

/// Quadrature rule on a 2D region: points strictly inside, positive weights.
struct QuadratureRule {
  std::vector<Vec2> points;
  Eigen::VectorXd weights;
  int exactness = 0; ///< exact for all polynomials of total degree <= exactness
};

/// Collapsed tensor-product Gauss rule on the triangle (a,b,c), exact to
/// total degree q. The Duffy map x = (1-u) a + u ((1-v) b + v c) has Jacobian
/// 2|T| u, so the u-direction needs one extra degree.
inline QuadratureRule triangle_rule(const Vec2 &a, const Vec2 &b, const Vec2 &c, int q)
{
  const int n = q / 2 + 2; // 2n-1 >= q+2 > q+1
  Eigen::VectorXd gx, gw;
  gauss_legendre(n, gx, gw);
  const double area2 = cross2(b - a, c - a);

  QuadratureRule rule;
  rule.exactness = q;
  rule.points.reserve(n * n);
  rule.weights.resize(n * n);
  int m = 0;
  for (int i = 0; i < n; i++) {
    const double u = gx[i];
    for (int j = 0; j < n; j++) {
      const double v = gx[j];
      rule.points.push_back((1.0 - u) * a + u * ((1.0 - v) * b + v * c));
      rule.weights[m++] = gw[i] * gw[j] * area2 * u;
    }
  }
  return rule;
}

/// Composite rule over a triangulated polygon, exact to total degree q.
inline QuadratureRule polygon_rule(const std::vector<Vec2> &loop,
                                   const std::vector<std::array<int, 3>> &tris, int q)
{
  QuadratureRule rule;
  rule.exactness = q;
  std::vector<double> w;
  for (const auto &t : tris) {
    QuadratureRule tr = triangle_rule(loop[t[0]], loop[t[1]], loop[t[2]], q);
    rule.points.insert(rule.points.end(), tr.points.begin(), tr.points.end());
    w.insert(w.end(), tr.weights.data(), tr.weights.data() + tr.weights.size());
  }
  rule.weights = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<long>(w.size()));
  return rule;
}

/// Rule on an element from its geometry and triangulation.
inline QuadratureRule quad_rule(const ElementGeometry &geo,
                                const std::vector<std::array<int, 3>> &tris, int q)
{
  if (q < 0) throw std::invalid_argument("quadrature exactness must be >= 0");
  return polygon_rule(geo.loop, tris, q);
}

inline QuadratureRule quad_rule(const ElementGeometry &geo, int q)
{
  return quad_rule(geo, triangulate_polygon(geo.loop), q);
}

/// 1D rule in an edge arc-length parameter s in [0,1]; weights carry the
/// physical edge length (sum = length).
struct EdgeRule {
  Eigen::VectorXd s;
  Eigen::VectorXd weights;
  int exactness = 0;
};

inline EdgeRule edge_rule(double length, int q)
{
  EdgeRule rule;
  rule.exactness = q;
  const int n = q / 2 + 1;
  gauss_legendre(n, rule.s, rule.weights);
  rule.weights *= length;
  return rule;
}

} // namespace wg

#endif
