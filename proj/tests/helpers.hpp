// Shared test utilities: interpolation of exact fields into the discrete
// spaces and random polynomial generation with a fixed seed.

#ifndef WG_TEST_HELPERS_HPP
#define WG_TEST_HELPERS_HPP

#include "wg/errors.hpp"
#include "wg/polynomial2.hpp"
#include "wg/system.hpp"

#include <functional>
#include <random>

namespace wg::test
{

/// Element-local interpolant [v0 x | v0 y | tangential edge traces] of a
/// vector field, matching the dof layout of LocalWeakOps.
inline Eigen::VectorXd interpolate_u_local(const LocalWeakOps &ops,
                                           const std::function<Vec2(const Vec2 &)> &u)
{
  Eigen::VectorXd dofs(ops.n_vec_dofs());
  const QuadratureRule rule = quad_rule(ops.geo, ops.tris, 2 * ops.k + 16);
  dofs.head(ops.mk()) =
      l2_project_element([&](const Vec2 &p) { return u(p).x(); }, ops.pk, rule);
  dofs.segment(ops.mk(), ops.mk()) =
      l2_project_element([&](const Vec2 &p) { return u(p).y(); }, ops.pk, rule);
  for (int i = 0; i < ops.n_sides(); i++) {
    const Vec2 t = ops.edge[i].direction();
    const EdgeRule er = edge_rule(ops.edge[i].length(), 2 * ops.k + 16);
    dofs.segment(2 * ops.mk() + i * (ops.k + 1), ops.k + 1) =
        l2_project_edge([&](const Vec2 &p) { return u(p).dot(t); }, ops.edge[i], er);
  }
  return dofs;
}

/// Element-local interpolant [q0 | edge traces] of a scalar field.
inline Eigen::VectorXd interpolate_p_local(const LocalWeakOps &ops,
                                           const std::function<double(const Vec2 &)> &q)
{
  Eigen::VectorXd dofs(ops.n_scalar_dofs());
  const QuadratureRule rule = quad_rule(ops.geo, ops.tris, 2 * ops.k + 16);
  dofs.head(ops.mkm1()) = l2_project_element(q, ops.pkm1, rule);
  for (int i = 0; i < ops.n_sides(); i++) {
    const EdgeRule er = edge_rule(ops.edge[i].length(), 2 * ops.k + 16);
    dofs.segment(ops.mkm1() + i * (ops.k + 1), ops.k + 1) =
        l2_project_edge(q, ops.edge[i], er);
  }
  return dofs;
}

/// Global interpolant of (u, p) into the full coefficient vector.
inline Eigen::VectorXd interpolate_global(const Discretization &d,
                                          const std::function<Vec2(const Vec2 &)> &u,
                                          const std::function<double(const Vec2 &)> &p)
{
  const DofMap &dm = d.dofs;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dm.n_total());
  for (int e = 0; e < d.mesh.n_elements(); e++) {
    const LocalWeakOps ops = make_local_ops(d.mesh, e, d.k, d.r);
    const QuadratureRule rule = quad_rule(ops.geo, ops.tris, 2 * d.k + 16);
    x.segment(dm.u0_offset(e), dm.mk()) =
        l2_project_element([&](const Vec2 &q) { return u(q).x(); }, ops.pk, rule);
    x.segment(dm.u0_offset(e) + dm.mk(), dm.mk()) =
        l2_project_element([&](const Vec2 &q) { return u(q).y(); }, ops.pk, rule);
    x.segment(dm.p0_offset(e), dm.mkm1()) =
        l2_project_element(p, ops.pkm1, rule);
  }
  for (int i = 0; i < d.mesh.n_edges(); i++) {
    const Edge &edge = d.mesh.edges[i];
    const EdgeBasis eb(d.mesh.vertices[edge.v0], d.mesh.vertices[edge.v1], d.k);
    const EdgeRule er = edge_rule(eb.length(), 2 * d.k + 16);
    const Vec2 t = eb.direction();
    x.segment(dm.ut_offset(i), d.k + 1) =
        l2_project_edge([&](const Vec2 &q) { return u(q).dot(t); }, eb, er);
    x.segment(dm.pb_offset(i), d.k + 1) = l2_project_edge(p, eb, er);
  }
  return x;
}

/// Random dense polynomial of the given total degree, coefficients in [-1,1].
inline Poly2 random_poly(std::mt19937 &rng, int degree)
{
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
  for (int i = 0; i <= degree; i++) {
    for (int j = 0; j <= degree - i; j++) c(i, j) = dist(rng);
  }
  return Poly2(c);
}

} // namespace wg::test

#endif
