// Element-local realizations of the discrete weak gradient and the discrete
// weak curl (2D reduction), plus the weak divergence as a test utility.
//
// 2D conventions, pinned by the commutation identities in the test suite:
//   curl of a vector  : curl v = d_x v2 - d_y v1        (scalar)
//   curl of a scalar  : curl q = (d_y q, -d_x q)        (vector)
//   cross with normal : v x n  = v1 n2 - v2 n1 = -v.t   with t = (-n_y, n_x)
//
// A vector weak function is {v0 in [P_k(T)]^2, per-edge tangential trace in
// P_k(e)}; a scalar weak function is {q0 in P_{k-1}(T), per-edge trace in
// P_k(e)}. Edge traces are stored along the global (low -> high vertex index)
// edge orientation; the per-side sign maps them to the CCW traversal.

#ifndef WG_WEAK_OPERATORS_HPP
#define WG_WEAK_OPERATORS_HPP

#include "wg/basis.hpp"
#include "wg/mesh.hpp"
#include "wg/quadrature.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace wg
{

struct WeakCurlDegree {
  int r;
  bool overridden = false; ///< a user override replaced the family default
};

/// Weak-curl polynomial degree: N + k - 1 on convex elements, 2N + k - 1 on
/// non-convex ones (N = edge count), capped at k + 11 for the 9-gon family.
/// An explicit override always wins but is flagged.
inline WeakCurlDegree weak_curl_degree(GridFamily family, int k,
                                       std::optional<int> override_r = std::nullopt)
{
  if (k < 1) throw std::invalid_argument("polynomial degree k must be >= 1");
  if (override_r) {
    if (*override_r < k - 1) {
      throw std::invalid_argument(
          "weak-curl degree r must be >= k-1 to represent curls of interior polynomials");
    }
    return {*override_r, true};
  }
  switch (family) {
  case GridFamily::Triangle: return {3 + k - 1, false};
  case GridFamily::Pentagon: return {2 * 5 + k - 1, false};
  case GridFamily::SGrid: return {std::min(2 * 9 + k - 1, k + 11), false};
  }
  throw std::invalid_argument("unknown grid family");
}

/// Element-local matrices for the weak operators, built on orthonormalized
/// bases so every local mass matrix is the identity.
struct LocalWeakOps {
  int k = 1;
  int r = 3;
  ElementGeometry geo;
  std::vector<std::array<int, 3>> tris;
  QuadratureRule rule;              ///< exactness 2r+2
  ElementBasis pk;                  ///< scalar P_k (vector basis = two blocks)
  ElementBasis pr;                  ///< scalar P_r, the weak-curl range
  ElementBasis pkm1;                ///< scalar P_{k-1}, the interior p-space
  std::vector<EdgeBasis> edge;      ///< along global edge orientation
  std::vector<EdgeRule> edge_rules; ///< exactness 2r+2
  std::vector<double> edge_sign;    ///< +1 if CCW traversal matches global dir

  /// Weak gradient: (2 dim P_k) x n_scalar_dofs, scalar dofs ordered
  /// [interior P_{k-1} | edge 0 trace | edge 1 trace | ...].
  Eigen::MatrixXd G;
  /// Weak curl: (dim P_r) x n_vec_dofs, vector dofs ordered
  /// [v0 x-block | v0 y-block | edge 0 tangential | edge 1 tangential | ...].
  Eigen::MatrixXd C;
  /// Coefficients in the P_r basis of curl(v0) per interior vector dof
  /// (exact: deg curl v0 = k-1 <= r). Used by the discrete H1 norm.
  Eigen::MatrixXd curl_v0;

  int mk() const { return poly_space_dim(k); }
  int mr() const { return poly_space_dim(r); }
  int mkm1() const { return poly_space_dim(k - 1); }
  int n_sides() const { return static_cast<int>(geo.loop.size()); }
  int n_vec_dofs() const { return 2 * mk() + n_sides() * (k + 1); }
  int n_scalar_dofs() const { return mkm1() + n_sides() * (k + 1); }
};

/// Build the local operators for one element. `global_signs[i]` tells whether
/// the CCW traversal of side i runs along the global edge orientation.
inline LocalWeakOps make_local_ops(const ElementGeometry &geo,
                                   const std::vector<double> &global_signs, int k, int r)
{
  LocalWeakOps ops;
  ops.k = k;
  ops.r = r;
  ops.geo = geo;
  ops.tris = triangulate_polygon(geo.loop);
  ops.rule = quad_rule(geo, ops.tris, 2 * r + 2);
  ops.pk = ElementBasis(ScaledMonomialBasis(geo.centroid, geo.h_T, k), ops.rule);
  ops.pr = ElementBasis(ScaledMonomialBasis(geo.centroid, geo.h_T, r), ops.rule);
  ops.pkm1 = ElementBasis(ScaledMonomialBasis(geo.centroid, geo.h_T, k - 1), ops.rule);
  ops.edge_sign = global_signs;

  const int ns = ops.n_sides();
  const int mk = ops.mk();
  const int mr = ops.mr();
  const int kp1 = k + 1;

  ops.edge.reserve(ns);
  ops.edge_rules.reserve(ns);
  for (int i = 0; i < ns; i++) {
    const Vec2 &a = geo.loop[i];
    const Vec2 &b = geo.loop[(i + 1) % ns];
    // endpoints along the global orientation
    if (global_signs[i] > 0) {
      ops.edge.emplace_back(a, b, k);
    } else {
      ops.edge.emplace_back(b, a, k);
    }
    ops.edge_rules.push_back(edge_rule(geo.edge_length[i], 2 * r + 2));
  }

  // Interior evaluations shared by both operators
  Eigen::MatrixXd pk_dx, pk_dy, pr_dx, pr_dy;
  ops.pk.gradients(ops.rule.points, pk_dx, pk_dy);
  ops.pr.gradients(ops.rule.points, pr_dx, pr_dy);
  const Eigen::MatrixXd pkm1_v = ops.pkm1.values(ops.rule.points);
  const Eigen::MatrixXd pk_v = ops.pk.values(ops.rule.points);
  const Eigen::MatrixXd pr_v = ops.pr.values(ops.rule.points);
  const auto W = ops.rule.weights.asDiagonal();

  // --- Weak gradient G: (G s, psi)_T = -(s0, div psi)_T + <s_b, psi.n>_dT
  // for psi in [P_k]^2. With the orthonormal vector P_k basis the left Gram
  // is the identity, so G rows are the right-hand moments directly.
  ops.G = Eigen::MatrixXd::Zero(2 * mk, ops.n_scalar_dofs());
  // interior block: -(alpha_i, div Psi_j); div (psi,0) = d_x psi, div (0,psi) = d_y psi
  ops.G.topLeftCorner(mk, ops.mkm1()) = -(pk_dx.transpose() * W * pkm1_v);
  ops.G.block(mk, 0, mk, ops.mkm1()) = -(pk_dy.transpose() * W * pkm1_v);

  // --- Weak curl C: (C v, q)_T = (v0, curl q)_T + <v_t, q>_dT for q in P_r,
  // curl q = (d_y q, -d_x q), and v_t the tangential trace along the CCW
  // traversal (sign-mapped from the stored global-orientation trace).
  ops.C = Eigen::MatrixXd::Zero(mr, ops.n_vec_dofs());
  ops.C.leftCols(mk) = pr_dy.transpose() * W * pk_v;
  ops.C.block(0, mk, mr, mk) = -(pr_dx.transpose() * W * pk_v);

  // --- curl of the interior component, as exact P_r coefficients:
  // curl (psi,0) = -d_y psi, curl (0,psi) = d_x psi
  ops.curl_v0 = Eigen::MatrixXd::Zero(mr, 2 * mk);
  ops.curl_v0.leftCols(mk) = -(pr_v.transpose() * W * pk_dy);
  ops.curl_v0.rightCols(mk) = pr_v.transpose() * W * pk_dx;

  // --- boundary terms
  for (int i = 0; i < ns; i++) {
    const EdgeRule &er = ops.edge_rules[i];
    const EdgeBasis &eb = ops.edge[i];
    const long nq = er.s.size();
    std::vector<Vec2> pts(nq);
    for (long q = 0; q < nq; q++) pts[q] = eb.point(er.s[q]);
    const Eigen::MatrixXd beta = eb.values(er.s);           // nq x (k+1)
    const Eigen::MatrixXd pk_e = ops.pk.values(pts);        // nq x mk
    const Eigen::MatrixXd pr_e = ops.pr.values(pts);        // nq x mr
    const auto We = er.weights.asDiagonal();
    const Vec2 n = ops.geo.edge_normal[i];

    const int scol = ops.mkm1() + i * kp1;
    ops.G.block(0, scol, mk, kp1) = n.x() * (pk_e.transpose() * We * beta);
    ops.G.block(mk, scol, mk, kp1) = n.y() * (pk_e.transpose() * We * beta);

    const int vcol = 2 * mk + i * kp1;
    ops.C.block(0, vcol, mr, kp1) = global_signs[i] * (pr_e.transpose() * We * beta);
  }
  return ops;
}

inline LocalWeakOps make_local_ops(const PolyMesh &mesh, int element, int k, int r)
{
  const ElementGeometry geo = element_geometry(mesh, element);
  std::vector<double> signs;
  signs.reserve(mesh.element_edges[element].size());
  for (const ElementEdge &ee : mesh.element_edges[element]) signs.push_back(ee.sign);
  return make_local_ops(geo, signs, k, r);
}

/// Discrete weak divergence (test utility): acts on pairs {v0 in [P_k]^2,
/// per-edge NORMAL trace in P_k(e)} via
///   (div_w v, q)_T = -(v0, grad q)_T + <v_b.n, q>_dT  for all q in P_r(T).
/// Dof order: [v0 x-block | v0 y-block | edge 0 normal | edge 1 normal | ...],
/// normal traces along each side's outward normal, parameterized like the
/// element's edge bases.
inline Eigen::MatrixXd weak_div_matrix(const LocalWeakOps &ops)
{
  const int mk = ops.mk();
  const int mr = ops.mr();
  const int kp1 = ops.k + 1;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(mr, ops.n_vec_dofs());

  Eigen::MatrixXd pr_dx, pr_dy;
  ops.pr.gradients(ops.rule.points, pr_dx, pr_dy);
  const Eigen::MatrixXd pk_v = ops.pk.values(ops.rule.points);
  const auto W = ops.rule.weights.asDiagonal();
  D.leftCols(mk) = -(pr_dx.transpose() * W * pk_v);
  D.block(0, mk, mr, mk) = -(pr_dy.transpose() * W * pk_v);

  for (int i = 0; i < ops.n_sides(); i++) {
    const EdgeRule &er = ops.edge_rules[i];
    const EdgeBasis &eb = ops.edge[i];
    const long nq = er.s.size();
    std::vector<Vec2> pts(nq);
    for (long q = 0; q < nq; q++) pts[q] = eb.point(er.s[q]);
    const Eigen::MatrixXd beta = eb.values(er.s);
    const Eigen::MatrixXd pr_e = ops.pr.values(pts);
    D.block(0, 2 * mk + i * kp1, mr, kp1) = pr_e.transpose() * er.weights.asDiagonal() * beta;
  }
  return D;
}

} // namespace wg

#endif
