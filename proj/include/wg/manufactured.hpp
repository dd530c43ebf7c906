// Manufactured model-problem instances: exact (u, p) with derived data
//   f = curl(nu curl u) - grad p,   g = div u,
// a tangential boundary trace taken from u, and the scalar curl of u (used by
// the energy-error evaluation).

#ifndef WG_MANUFACTURED_HPP
#define WG_MANUFACTURED_HPP

#include "wg/geometry.hpp"
#include "wg/polynomial2.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace wg
{

struct ManufacturedCase {
  std::string name;
  double nu = 1.0;
  std::function<Vec2(const Vec2 &)> u;
  std::function<double(const Vec2 &)> p;
  std::function<Vec2(const Vec2 &)> f;
  std::function<double(const Vec2 &)> g;
  std::function<double(const Vec2 &)> curl_u; ///< scalar d_x u2 - d_y u1
};

/// The smooth benchmark solution on the unit square:
///   u = ( 4(x^2-2x^3+x^4)(2y-6y^2+4y^3), -4(y^2-2y^3+y^4)(2x-6x^2+4x^3) ),
///   p = (x-x^2)(y-y^2),  nu = 1.
/// u is the rotated gradient of the stream function 4 X(x) Y(y), so g = 0,
/// and u vanishes on the whole boundary, so the tangential trace is 0.
/// f and curl u below are the hardcoded symbolic derivatives.
inline ManufacturedCase case_e1(double nu = 1.0)
{
  auto X0 = [](double t) { return t * t - 2 * t * t * t + t * t * t * t; };
  auto X1 = [](double t) { return 2 * t - 6 * t * t + 4 * t * t * t; };
  auto X2 = [](double t) { return 2 - 12 * t + 12 * t * t; };
  auto X3 = [](double t) { return -12 + 24 * t; };

  ManufacturedCase c;
  c.name = "e1";
  c.nu = nu;
  c.u = [=](const Vec2 &q) {
    return Vec2(4 * X0(q.x()) * X1(q.y()), -4 * X0(q.y()) * X1(q.x()));
  };
  c.p = [](const Vec2 &q) {
    return (q.x() - q.x() * q.x()) * (q.y() - q.y() * q.y());
  };
  // curl u = -4 (X'' Y + X Y'')
  c.curl_u = [=](const Vec2 &q) {
    return -4 * (X2(q.x()) * X0(q.y()) + X0(q.x()) * X2(q.y()));
  };
  // f = curl(nu curl u) - grad p, curl of a scalar w being (d_y w, -d_x w)
  c.f = [=](const Vec2 &q) {
    const double x = q.x(), y = q.y();
    const Vec2 curl_curl_u(-4 * (X2(x) * X1(y) + X0(x) * X3(y)),
                           4 * (X3(x) * X0(y) + X1(x) * X2(y)));
    const Vec2 grad_p((1 - 2 * x) * (y - y * y), (x - x * x) * (1 - 2 * y));
    return Vec2(nu * curl_curl_u - grad_p);
  };
  c.g = [](const Vec2 &) { return 0.0; };
  return c;
}

/// Case built from exact polynomials (u1, u2, p): all data derived by exact
/// polynomial differentiation. Backbone of the patch tests.
inline ManufacturedCase polynomial_case(const Poly2 &u1, const Poly2 &u2, const Poly2 &p,
                                        double nu = 1.0, std::string name = "poly")
{
  const Poly2 curl_u = u2.dx() - u1.dy();
  const Poly2 f1 = nu * curl_u.dy() - p.dx();
  const Poly2 f2 = (-nu) * curl_u.dx() - p.dy();
  const Poly2 g = u1.dx() + u2.dy();

  ManufacturedCase c;
  c.name = std::move(name);
  c.nu = nu;
  c.u = [u1, u2](const Vec2 &q) { return Vec2(u1(q), u2(q)); };
  c.p = [p](const Vec2 &q) { return p(q); };
  c.f = [f1, f2](const Vec2 &q) { return Vec2(f1(q), f2(q)); };
  c.g = [g](const Vec2 &q) { return g(q); };
  c.curl_u = [curl_u](const Vec2 &q) { return curl_u(q); };
  return c;
}

inline ManufacturedCase make_case(const std::string &name, double nu = 1.0)
{
  if (name == "e1") return case_e1(nu);
  throw std::invalid_argument("unknown case name: " + name);
}

} // namespace wg

#endif
