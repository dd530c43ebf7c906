// Global degree-of-freedom layout, assembly of the saddle-point system
//   a(u,v) - b(v,p) = (f, v0),   s(p,q) + b(u,q) = -(g, q0),
// essential boundary conditions via symmetric condensation, and the sparse
// direct solve of the symmetrized block system K = [[A, -B^T], [-B, -S]].

#ifndef WG_SYSTEM_HPP
#define WG_SYSTEM_HPP

#include "wg/manufactured.hpp"
#include "wg/mesh.hpp"
#include "wg/weak_operators.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

namespace wg
{

/// Global layout: [u interior per element | u tangential per edge |
/// p interior per element | p trace per edge], each block in index order.
struct DofMap {
  int k = 1;
  int n_elements = 0;
  int n_edges = 0;

  int mk() const { return poly_space_dim(k); }
  int mkm1() const { return poly_space_dim(k - 1); }

  std::int64_t u0_offset(int e) const { return std::int64_t(e) * 2 * mk(); }
  std::int64_t ut_offset(int edge) const
  {
    return std::int64_t(n_elements) * 2 * mk() + std::int64_t(edge) * (k + 1);
  }
  std::int64_t n_u() const
  {
    return std::int64_t(n_elements) * 2 * mk() + std::int64_t(n_edges) * (k + 1);
  }
  std::int64_t p0_offset(int e) const { return n_u() + std::int64_t(e) * mkm1(); }
  std::int64_t pb_offset(int edge) const
  {
    return n_u() + std::int64_t(n_elements) * mkm1() + std::int64_t(edge) * (k + 1);
  }
  std::int64_t n_p() const
  {
    return std::int64_t(n_elements) * mkm1() + std::int64_t(n_edges) * (k + 1);
  }
  std::int64_t n_total() const { return n_u() + n_p(); }
};

inline DofMap build_dof_map(const PolyMesh &mesh, int k)
{
  if (k < 1) throw std::invalid_argument("polynomial degree k must be >= 1");
  DofMap d;
  d.k = k;
  d.n_elements = mesh.n_elements();
  d.n_edges = mesh.n_edges();
  return d;
}

/// Mesh + degrees + per-element local operators. Element shapes repeat in the
/// structured families (translated copies), so local operators are cached by
/// the centroid-relative vertex coordinates and side orientation signs.
struct Discretization {
  PolyMesh mesh;
  int k = 1;
  int r = 3;
  double nu = 1.0;
  DofMap dofs;
  std::vector<std::shared_ptr<const LocalWeakOps>> ops;
  /// Translation from the cached representative element to element e; local
  /// matrices are translation-invariant, but data functions must be sampled
  /// at cached_point + shift[e].
  std::vector<Vec2> shift;

  const LocalWeakOps &element_ops(int e) const { return *ops[e]; }
};

inline Discretization discretize(PolyMesh mesh, int k, int r, double nu = 1.0)
{
  Discretization d;
  d.mesh = std::move(mesh);
  d.k = k;
  d.r = r;
  d.nu = nu;
  d.dofs = build_dof_map(d.mesh, k);
  d.ops.resize(d.mesh.n_elements());
  d.shift.resize(d.mesh.n_elements());

  std::map<std::vector<std::int64_t>, std::shared_ptr<const LocalWeakOps>> cache;
  const double key_scale = 1e12;
  for (int e = 0; e < d.mesh.n_elements(); e++) {
    const ElementGeometry geo = element_geometry(d.mesh, e);
    std::vector<std::int64_t> key;
    key.reserve(3 * geo.loop.size());
    for (std::size_t i = 0; i < geo.loop.size(); i++) {
      const Vec2 rel = geo.loop[i] - geo.centroid;
      key.push_back(std::llround(rel.x() / geo.h_T * key_scale));
      key.push_back(std::llround(rel.y() / geo.h_T * key_scale));
      key.push_back(static_cast<std::int64_t>(d.mesh.element_edges[e][i].sign));
    }
    key.push_back(std::llround(geo.h_T * key_scale));
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::vector<double> signs;
      for (const ElementEdge &ee : d.mesh.element_edges[e]) signs.push_back(ee.sign);
      it = cache.emplace(std::move(key),
                         std::make_shared<LocalWeakOps>(make_local_ops(geo, signs, k, r)))
               .first;
    }
    d.ops[e] = it->second;
    d.shift[e] = geo.centroid - it->second->geo.centroid;
  }
  return d;
}

/// Local-to-global index lists for one element.
struct ElementDofs {
  std::vector<int> u; ///< [v0 x | v0 y | side tangential traces]
  std::vector<int> p; ///< [p0 | side traces], offsets into the p block (0-based)
};

inline ElementDofs element_dofs(const Discretization &d, int e)
{
  const DofMap &dm = d.dofs;
  const int kp1 = d.k + 1;
  ElementDofs dofs;
  dofs.u.reserve(2 * dm.mk() + kp1 * d.mesh.element_edges[e].size());
  for (int i = 0; i < 2 * dm.mk(); i++) dofs.u.push_back(static_cast<int>(dm.u0_offset(e)) + i);
  for (const ElementEdge &ee : d.mesh.element_edges[e]) {
    for (int m = 0; m < kp1; m++) dofs.u.push_back(static_cast<int>(dm.ut_offset(ee.edge)) + m);
  }
  const int nu = static_cast<int>(dm.n_u());
  for (int i = 0; i < dm.mkm1(); i++)
    dofs.p.push_back(static_cast<int>(dm.p0_offset(e)) - nu + i);
  for (const ElementEdge &ee : d.mesh.element_edges[e]) {
    for (int m = 0; m < kp1; m++)
      dofs.p.push_back(static_cast<int>(dm.pb_offset(ee.edge)) - nu + m);
  }
  return dofs;
}

struct SaddleSystem {
  DofMap dofs;
  Eigen::SparseMatrix<double> A; ///< n_u x n_u, from (nu curl_w u, curl_w v)
  Eigen::SparseMatrix<double> B; ///< n_p x n_u, from b(u,q) = (u0, grad_w q)
  Eigen::SparseMatrix<double> S; ///< n_p x n_p, from h_T <p0-pb, q0-qb>_dT
  Eigen::VectorXd F;             ///< (f, v0) per u dof
  Eigen::VectorXd G;             ///< -(g, q0) per p dof
};

/// Assemble the bilinear forms and load vectors; boundary conditions are not
/// applied here. Elements are processed in index order (deterministic).
inline SaddleSystem assemble(const Discretization &d, const ManufacturedCase *problem = nullptr)
{
  const DofMap &dm = d.dofs;
  const int nu = static_cast<int>(dm.n_u());
  const int np = static_cast<int>(dm.n_p());

  SaddleSystem sys;
  sys.dofs = dm;
  sys.F = Eigen::VectorXd::Zero(nu);
  sys.G = Eigen::VectorXd::Zero(np);

  using T = Eigen::Triplet<double>;
  std::vector<T> ta, tb, ts;

  // Local matrices and basis-value tables are identical for translated
  // copies of a shape, so they are cached per LocalWeakOps instance.
  struct LocalTables {
    Eigen::MatrixXd Aloc, Sloc;
    Eigen::MatrixXd pk_v, pkm1_v; ///< interior basis values at rule.points
  };
  std::map<const LocalWeakOps *, LocalTables> cache;

  for (int e = 0; e < d.mesh.n_elements(); e++) {
    const LocalWeakOps &ops = d.element_ops(e);
    const ElementDofs dofs = element_dofs(d, e);
    const int num_u = static_cast<int>(dofs.u.size());
    const int num_p = static_cast<int>(dofs.p.size());
    const int mk = ops.mk();
    const int kp1 = d.k + 1;

    auto cit = cache.find(&ops);
    if (cit == cache.end()) {
      LocalTables t;
      // a_T: nu * C^T C (identity Gram of the orthonormal P_r basis),
      // symmetrized so the assembled matrix is bitwise symmetric
      t.Aloc = d.nu * (ops.C.transpose() * ops.C);
      t.Aloc = 0.5 * (t.Aloc + t.Aloc.transpose()).eval();
      // s_T(p, q) = h_T sum_sides <p0 - pb, q0 - qb>
      t.Sloc = Eigen::MatrixXd::Zero(num_p, num_p);
      for (int i = 0; i < ops.n_sides(); i++) {
        const EdgeRule &er = ops.edge_rules[i];
        const long nq = er.s.size();
        std::vector<Vec2> pts(nq);
        for (long q = 0; q < nq; q++) pts[q] = ops.edge[i].point(er.s[q]);
        Eigen::MatrixXd D = Eigen::MatrixXd::Zero(nq, num_p);
        D.leftCols(ops.mkm1()) = ops.pkm1.values(pts);
        D.middleCols(ops.mkm1() + i * kp1, kp1) = -ops.edge[i].values(er.s);
        t.Sloc += ops.geo.h_T * (D.transpose() * er.weights.asDiagonal() * D);
      }
      t.Sloc = 0.5 * (t.Sloc + t.Sloc.transpose()).eval();
      t.pk_v = ops.pk.values(ops.rule.points);
      t.pkm1_v = ops.pkm1.values(ops.rule.points);
      cit = cache.emplace(&ops, std::move(t)).first;
    }
    const LocalTables &loc = cit->second;

    for (int i = 0; i < num_u; i++) {
      for (int j = 0; j < num_u; j++) {
        if (loc.Aloc(i, j) != 0.0) ta.emplace_back(dofs.u[i], dofs.u[j], loc.Aloc(i, j));
      }
    }

    // b_T(u, q) = (u0, grad_w q): u0 coefficients against G columns
    for (int q = 0; q < num_p; q++) {
      for (int j = 0; j < 2 * mk; j++) {
        const double v = ops.G(j, q);
        if (v != 0.0) tb.emplace_back(dofs.p[q], dofs.u[j], v);
      }
    }

    for (int i = 0; i < num_p; i++) {
      for (int j = 0; j < num_p; j++) {
        if (loc.Sloc(i, j) != 0.0) ts.emplace_back(dofs.p[i], dofs.p[j], loc.Sloc(i, j));
      }
    }

    if (problem) {
      // (f, v0)_T and -(g, q0)_T
      Eigen::VectorXd f1w(ops.rule.weights.size()), f2w(ops.rule.weights.size()),
          gw(ops.rule.weights.size());
      for (long q = 0; q < ops.rule.weights.size(); q++) {
        const Vec2 pt = ops.rule.points[q] + d.shift[e];
        const Vec2 fv = problem->f(pt);
        f1w[q] = ops.rule.weights[q] * fv.x();
        f2w[q] = ops.rule.weights[q] * fv.y();
        gw[q] = ops.rule.weights[q] * problem->g(pt);
      }
      sys.F.segment(dm.u0_offset(e), mk) += loc.pk_v.transpose() * f1w;
      sys.F.segment(dm.u0_offset(e) + mk, mk) += loc.pk_v.transpose() * f2w;
      sys.G.segment(dm.p0_offset(e) - dm.n_u(), dm.mkm1()) -= loc.pkm1_v.transpose() * gw;
    }
  }

  sys.A.resize(nu, nu);
  sys.A.setFromTriplets(ta.begin(), ta.end());
  sys.B.resize(np, nu);
  sys.B.setFromTriplets(tb.begin(), tb.end());
  sys.S.resize(np, np);
  sys.S.setFromTriplets(ts.begin(), ts.end());
  return sys;
}

/// Reduced symmetric indefinite system after eliminating constrained dofs.
struct ReducedSystem {
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd rhs;
  std::vector<std::int64_t> kept;  ///< reduced index -> full index
  std::vector<std::int64_t> remap; ///< full index -> reduced index or -1
  Eigen::VectorXd boundary_values; ///< full-length, nonzero only on constrained dofs
};

/// Constrain boundary u tangential traces to the edge L2 projection of the
/// exact tangential trace u.t (along the global edge direction) and boundary
/// p traces to zero; eliminate by symmetric condensation.
inline ReducedSystem apply_boundary(const SaddleSystem &sys, const Discretization &d,
                                    const ManufacturedCase &problem)
{
  const DofMap &dm = sys.dofs;
  const std::int64_t n = dm.n_total();

  std::vector<bool> constrained(n, false);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(n);

  for (int eidx = 0; eidx < d.mesh.n_edges(); eidx++) {
    const Edge &edge = d.mesh.edges[eidx];
    if (!edge.boundary) continue;
    const Vec2 a = d.mesh.vertices[edge.v0];
    const Vec2 b = d.mesh.vertices[edge.v1];
    const EdgeBasis basis(a, b, d.k);
    const Vec2 t = basis.direction();
    const EdgeRule rule = edge_rule(basis.length(), 2 * d.k + 16);
    const Eigen::VectorXd ub =
        l2_project_edge([&](const Vec2 &x) { return problem.u(x).dot(t); }, basis, rule);
    for (int m = 0; m <= d.k; m++) {
      constrained[dm.ut_offset(eidx) + m] = true;
      values[dm.ut_offset(eidx) + m] = ub[m];
      constrained[dm.pb_offset(eidx) + m] = true; // p_b = 0 on the boundary
    }
  }

  ReducedSystem red;
  red.boundary_values = values;
  red.remap.assign(n, -1);
  for (std::int64_t i = 0; i < n; i++) {
    if (!constrained[i]) {
      red.remap[i] = static_cast<std::int64_t>(red.kept.size());
      red.kept.push_back(i);
    }
  }
  const std::int64_t nred = static_cast<std::int64_t>(red.kept.size());

  // rhs of K x = rhs with K = [[A, -B^T], [-B, -S]]: [F ; -G]
  Eigen::VectorXd full_rhs(n);
  full_rhs.head(dm.n_u()) = sys.F;
  full_rhs.tail(dm.n_p()) = -sys.G;
  red.rhs = Eigen::VectorXd::Zero(nred);
  for (std::int64_t i = 0; i < nred; i++) red.rhs[i] = full_rhs[red.kept[i]];

  using T = Eigen::Triplet<double>;
  std::vector<T> tk;
  auto add_entry = [&](std::int64_t gi, std::int64_t gj, double v) {
    const std::int64_t ri = red.remap[gi];
    if (ri < 0) return;
    const std::int64_t rj = red.remap[gj];
    if (rj < 0) {
      red.rhs[ri] -= v * values[gj];
    } else {
      tk.emplace_back(static_cast<int>(ri), static_cast<int>(rj), v);
    }
  };

  const std::int64_t pu = dm.n_u();
  for (int col = 0; col < sys.A.outerSize(); col++) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, col); it; ++it) {
      add_entry(it.row(), it.col(), it.value());
    }
  }
  for (int col = 0; col < sys.B.outerSize(); col++) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.B, col); it; ++it) {
      add_entry(pu + it.row(), it.col(), -it.value()); // -B
      add_entry(it.col(), pu + it.row(), -it.value()); // -B^T
    }
  }
  for (int col = 0; col < sys.S.outerSize(); col++) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.S, col); it; ++it) {
      add_entry(pu + it.row(), pu + it.col(), -it.value());
    }
  }

  red.K.resize(nred, nred);
  red.K.setFromTriplets(tk.begin(), tk.end());
  return red;
}

struct SolveResult {
  Eigen::VectorXd x; ///< full coefficient vector (boundary values reinserted)
  double residual = 0.0;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Direct solve of the symmetric indefinite reduced system with a
/// relative-residual check. LDL^T (single-triangle storage) is tried first;
/// if it hits a zero pivot or misses the tolerance, sparse LU takes over.
inline SolveResult solve(const ReducedSystem &red, double tol = 1e-9)
{
  const double rhs_norm = red.rhs.norm() > 0 ? red.rhs.norm() : 1.0;
  Eigen::VectorXd xr;
  double res = std::numeric_limits<double>::infinity();

  {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(red.K);
    if (ldlt.info() == Eigen::Success) {
      xr = ldlt.solve(red.rhs);
      res = (red.K * xr - red.rhs).norm() / rhs_norm;
    }
  }
  if (!(res <= tol)) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(red.K);
    if (lu.info() != Eigen::Success) {
      throw SolverError("sparse factorization failed (singular reduced system?)");
    }
    xr = lu.solve(red.rhs);
    res = (red.K * xr - red.rhs).norm() / rhs_norm;
  }
  if (!(res <= tol)) {
    throw SolverError("linear solve residual " + std::to_string(res) + " above tolerance " +
                      std::to_string(tol));
  }
  SolveResult out;
  out.residual = res;
  out.x = red.boundary_values;
  for (std::size_t i = 0; i < red.kept.size(); i++) out.x[red.kept[i]] = xr[i];
  return out;
}

/// Coordinate-format text dump of the reduced matrix (row col value).
inline void dump_matrix(const Eigen::SparseMatrix<double> &K, std::ostream &os)
{
  os.precision(17);
  for (int col = 0; col < K.outerSize(); col++) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

} // namespace wg

#endif
