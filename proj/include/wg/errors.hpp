// Error measurement for computed WG solutions: L2 errors of the velocity and
// pressure interior components, the discrete energy error via the projection
// identity Q_h(curl u) = curl_w (Q_h u), mesh-dependent norms, and observed
// convergence orders.

#ifndef WG_ERRORS_HPP
#define WG_ERRORS_HPP

#include "wg/system.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace wg
{

namespace detail
{

/// Local coefficient vector [v0 x | v0 y | side traces] for element e.
inline Eigen::VectorXd local_u(const Discretization &d, int e, const Eigen::VectorXd &x)
{
  const ElementDofs dofs = element_dofs(d, e);
  Eigen::VectorXd loc(dofs.u.size());
  for (std::size_t i = 0; i < dofs.u.size(); i++) loc[i] = x[dofs.u[i]];
  return loc;
}

inline Eigen::VectorXd local_p(const Discretization &d, int e, const Eigen::VectorXd &x)
{
  const ElementDofs dofs = element_dofs(d, e);
  const std::int64_t nu = d.dofs.n_u();
  Eigen::VectorXd loc(dofs.p.size());
  for (std::size_t i = 0; i < dofs.p.size(); i++) loc[i] = x[nu + dofs.p[i]];
  return loc;
}

} // namespace detail

namespace detail
{

/// Quadrature and basis values for one representative element shape. Elements
/// sharing a LocalWeakOps instance are translated copies, so these tables are
/// reusable; only data-function samples depend on the element's position.
struct ShapeTables {
  QuadratureRule rule;
  Eigen::MatrixXd vals; ///< basis values at rule.points (nq x dim)
};

template <typename BasisGetter>
const ShapeTables &shape_tables(std::map<const LocalWeakOps *, ShapeTables> &cache,
                                const LocalWeakOps &ops, int exactness, BasisGetter basis)
{
  auto it = cache.find(&ops);
  if (it == cache.end()) {
    ShapeTables t;
    t.rule = polygon_rule(ops.geo.loop, ops.tris, exactness);
    t.vals = basis(ops).values(t.rule.points);
    it = cache.emplace(&ops, std::move(t)).first;
  }
  return it->second;
}

} // namespace detail

/// || u - u_h0 ||_{L2}: interior velocity components against the exact field.
inline double error_l2_u(const Discretization &d, const Eigen::VectorXd &x,
                         const ManufacturedCase &problem)
{
  std::map<const LocalWeakOps *, detail::ShapeTables> cache;
  double acc = 0.0;
  for (int e = 0; e < d.mesh.n_elements(); e++) {
    const LocalWeakOps &ops = d.element_ops(e);
    const detail::ShapeTables &t = detail::shape_tables(
        cache, ops, 2 * d.k + 16, [](const LocalWeakOps &o) -> const ElementBasis & { return o.pk; });
    const Eigen::VectorXd loc = detail::local_u(d, e, x);
    const Eigen::VectorXd uh1 = t.vals * loc.head(ops.mk());
    const Eigen::VectorXd uh2 = t.vals * loc.segment(ops.mk(), ops.mk());
    for (long q = 0; q < t.rule.weights.size(); q++) {
      const Vec2 u = problem.u(t.rule.points[q] + d.shift[e]);
      acc += t.rule.weights[q] * ((u.x() - uh1[q]) * (u.x() - uh1[q]) +
                                  (u.y() - uh2[q]) * (u.y() - uh2[q]));
    }
  }
  return std::sqrt(acc);
}

/// ||| Q_h u - u_h |||: by the commuting-projection identity this equals
/// the L2 distance between Q_h^r (curl u) and curl_w u_h, evaluated in the
/// orthonormal P_r coefficient space.
inline double error_energy(const Discretization &d, const Eigen::VectorXd &x,
                           const ManufacturedCase &problem)
{
  std::map<const LocalWeakOps *, detail::ShapeTables> cache;
  double acc = 0.0;
  for (int e = 0; e < d.mesh.n_elements(); e++) {
    const LocalWeakOps &ops = d.element_ops(e);
    const detail::ShapeTables &t = detail::shape_tables(
        cache, ops, std::max(2 * d.r + 2, d.r + 16),
        [](const LocalWeakOps &o) -> const ElementBasis & { return o.pr; });
    Eigen::VectorXd fw(t.rule.weights.size());
    for (long q = 0; q < t.rule.weights.size(); q++) {
      fw[q] = t.rule.weights[q] * problem.curl_u(t.rule.points[q] + d.shift[e]);
    }
    const Eigen::VectorXd proj = t.vals.transpose() * fw;
    const Eigen::VectorXd wh = ops.C * detail::local_u(d, e, x);
    acc += (proj - wh).squaredNorm();
  }
  return std::sqrt(acc);
}

/// || p - p_h0 ||_{L2}: interior pressure component against the exact field.
inline double error_l2_p(const Discretization &d, const Eigen::VectorXd &x,
                         const ManufacturedCase &problem)
{
  std::map<const LocalWeakOps *, detail::ShapeTables> cache;
  double acc = 0.0;
  for (int e = 0; e < d.mesh.n_elements(); e++) {
    const LocalWeakOps &ops = d.element_ops(e);
    const detail::ShapeTables &t = detail::shape_tables(
        cache, ops, 2 * d.k + 16,
        [](const LocalWeakOps &o) -> const ElementBasis & { return o.pkm1; });
    const Eigen::VectorXd loc = detail::local_p(d, e, x);
    const Eigen::VectorXd ph = t.vals * loc.head(ops.mkm1());
    for (long q = 0; q < t.rule.weights.size(); q++) {
      const double diff = problem.p(t.rule.points[q] + d.shift[e]) - ph[q];
      acc += t.rule.weights[q] * diff * diff;
    }
  }
  return std::sqrt(acc);
}

/// Observed orders log2(e_{i-1} / e_i) under uniform bisection; NaN where the
/// ratio is not positive or the previous level is missing.
inline std::vector<double> convergence_orders(const std::vector<double> &errors)
{
  std::vector<double> orders(errors.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i < errors.size(); i++) {
    if (errors[i - 1] > 0 && errors[i] > 0) {
      orders[i] = std::log2(errors[i - 1] / errors[i]);
    }
  }
  return orders;
}

struct NormSuite {
  double energy = 0.0; ///< ||| v |||_{V_h} = (sum ||curl_w v||^2)^{1/2}
  double h1 = 0.0;     ///< discrete 1,h norm of the velocity dofs
  double wh = 0.0;     ///< ||| q |||_{W_h} = (sum h_T ||q0 - qb||^2_{dT})^{1/2}
};

/// Mesh-dependent norms of a full coefficient vector.
inline NormSuite norm_suite(const Discretization &d, const Eigen::VectorXd &x)
{
  NormSuite out;
  double energy2 = 0.0, h12 = 0.0, wh2 = 0.0;
  const int kp1 = d.k + 1;
  for (int e = 0; e < d.mesh.n_elements(); e++) {
    const LocalWeakOps &ops = d.element_ops(e);
    const Eigen::VectorXd lu = detail::local_u(d, e, x);
    const Eigen::VectorXd lp = detail::local_p(d, e, x);

    energy2 += (ops.C * lu).squaredNorm();
    h12 += (ops.curl_v0 * lu.head(2 * ops.mk())).squaredNorm();

    for (int i = 0; i < ops.n_sides(); i++) {
      const EdgeRule &er = ops.edge_rules[i];
      const long nq = er.s.size();
      std::vector<Vec2> pts(nq);
      for (long q = 0; q < nq; q++) pts[q] = ops.edge[i].point(er.s[q]);
      const Eigen::MatrixXd pk_v = ops.pk.values(pts);
      const Eigen::MatrixXd pkm1_v = ops.pkm1.values(pts);
      const Eigen::MatrixXd eb_v = ops.edge[i].values(er.s);
      const Vec2 n = ops.geo.edge_normal[i];

      // (v0 - vb) x n: v x n = v1 n2 - v2 n1, and (vb t_g) x n = -sign vb_t
      const Eigen::VectorXd v0xn =
          n.y() * (pk_v * lu.head(ops.mk())) - n.x() * (pk_v * lu.segment(ops.mk(), ops.mk()));
      const Eigen::VectorXd vbxn =
          -ops.edge_sign[i] * (eb_v * lu.segment(2 * ops.mk() + i * kp1, kp1));
      const Eigen::VectorXd jump_u = v0xn - vbxn;
      h12 += (jump_u.array().square() * er.weights.array()).sum() / ops.geo.h_T;

      const Eigen::VectorXd jump_p = pkm1_v * lp.head(ops.mkm1()) -
                                     eb_v * lp.segment(ops.mkm1() + i * kp1, kp1);
      wh2 += ops.geo.h_T * (jump_p.array().square() * er.weights.array()).sum();
    }
  }
  out.energy = std::sqrt(energy2);
  out.h1 = std::sqrt(h12);
  out.wh = std::sqrt(wh2);
  return out;
}

} // namespace wg

#endif
