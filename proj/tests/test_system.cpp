#include "wg/system.hpp"
#include "helpers.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <sstream>

using namespace wg;

TEST_CASE("dof layout totals")
{
  // triangle level 1: 2 elements, 5 edges
  const DofMap d1 = build_dof_map(build_grid(GridFamily::Triangle, 1), 1);
  CHECK(d1.n_total() == 34); // 12 u0 + 10 ut + 2 p0 + 10 pb
  const DofMap d2 = build_dof_map(build_grid(GridFamily::Triangle, 1), 2);
  CHECK(d2.n_total() == 60); // 24 u0 + 15 ut + 6 p0 + 15 pb
  const DofMap d3 = build_dof_map(build_grid(GridFamily::Pentagon, 1), 1);
  CHECK(d3.n_total() == 42); // 12 u0 + 14 ut + 2 p0 + 14 pb
  CHECK_THROWS(build_dof_map(build_grid(GridFamily::Triangle, 1), 0));

  // blocks are contiguous and ordered [u0 | ut | p0 | pb]
  CHECK(d1.u0_offset(0) == 0);
  CHECK(d1.ut_offset(0) == 12);
  CHECK(d1.n_u() == 22);
  CHECK(d1.p0_offset(0) == 22);
  CHECK(d1.pb_offset(0) == 24);
}

TEST_CASE("A and S are symmetric positive semidefinite")
{
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (GridFamily fam : {GridFamily::Triangle, GridFamily::Pentagon, GridFamily::SGrid}) {
    const int k = 1, r = weak_curl_degree(fam, k).r;
    const Discretization d = discretize(build_grid(fam, 2), k, r);
    const SaddleSystem sys = assemble(d);

    const Eigen::SparseMatrix<double> At = Eigen::SparseMatrix<double>(sys.A.transpose());
    const Eigen::SparseMatrix<double> St = Eigen::SparseMatrix<double>(sys.S.transpose());
    CHECK((Eigen::MatrixXd(sys.A) - Eigen::MatrixXd(At)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((Eigen::MatrixXd(sys.S) - Eigen::MatrixXd(St)).cwiseAbs().maxCoeff() == 0.0);

    for (int trial = 0; trial < 100; trial++) {
      Eigen::VectorXd vu(sys.A.rows()), vp(sys.S.rows());
      for (long i = 0; i < vu.size(); i++) vu[i] = dist(rng);
      for (long i = 0; i < vp.size(); i++) vp[i] = dist(rng);
      CHECK(vu.dot(sys.A * vu) >= -1e-12 * vu.squaredNorm());
      CHECK(vp.dot(sys.S * vp) >= -1e-12 * vp.squaredNorm());
    }
  }
}

TEST_CASE("constant fields are in the kernel of A")
{
  const Discretization d = discretize(build_grid(GridFamily::SGrid, 2), 1, 12);
  const SaddleSystem sys = assemble(d);
  const Eigen::VectorXd x = test::interpolate_global(
      d, [](const Vec2 &) { return Vec2(1.0, -2.0); }, [](const Vec2 &) { return 0.0; });
  // r = 12 bases on the non-convex 9-gons leave ~1e-10 of projection noise
  CHECK((sys.A * x.head(d.dofs.n_u())).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("zero data produces the zero solution")
{
  const ManufacturedCase zero = polynomial_case(
      Poly2::constant(0.0), Poly2::constant(0.0), Poly2::constant(0.0), 1.0, "zero");
  for (GridFamily fam : {GridFamily::Triangle, GridFamily::Pentagon}) {
    const int k = 2, r = weak_curl_degree(fam, k).r;
    const Discretization d = discretize(build_grid(fam, 2), k, r);
    const SaddleSystem sys = assemble(d, &zero);
    const ReducedSystem red = apply_boundary(sys, d, zero);
    const SolveResult sol = solve(red);
    CHECK(sol.x.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("patch tests: polynomial solutions are reproduced exactly")
{
  // u a degree-k polynomial vector with p = 0: the discrete solution must
  // match to solver precision on level-2 meshes of every family.
  std::mt19937 rng(29);
  for (GridFamily fam : {GridFamily::Triangle, GridFamily::Pentagon, GridFamily::SGrid}) {
    for (int k : {1, 2, 3}) {
      const Poly2 O = Poly2::constant(0.0);
      Poly2 r1 = test::random_poly(rng, k);
      Poly2 r2 = test::random_poly(rng, k);
      const std::vector<std::array<Poly2, 2>> fields = {
          {Poly2::constant(1.0), O},
          {O, Poly2::constant(1.0)},
          {(-1.0) * Poly2::y(), Poly2::x()},
          {r1, r2},
      };
      const int r = weak_curl_degree(fam, k).r;
      const Discretization d = discretize(build_grid(fam, 2), k, r);
      for (const auto &uf : fields) {
        const ManufacturedCase c = polynomial_case(uf[0], uf[1], O, 1.0, "patch");
        const SaddleSystem sys = assemble(d, &c);
        const ReducedSystem red = apply_boundary(sys, d, c);
        const SolveResult sol = solve(red, 1e-8);
        const double scale =
            std::max(1.0, std::abs(c.u(Vec2(0.3, 0.7)).norm()) + sol.x.cwiseAbs().maxCoeff());
        INFO(to_string(fam) << " k=" << k);
        CHECK(error_l2_u(d, sol.x, c) / scale < 1e-7);
        CHECK(error_energy(d, sol.x, c) / scale < 1e-7);
        CHECK(error_l2_p(d, sol.x, c) / scale < 1e-7);
      }
    }
  }
}

TEST_CASE("assembly is deterministic")
{
  const ManufacturedCase c = make_case("e1");
  const Discretization d1 = discretize(build_grid(GridFamily::Pentagon, 2), 1, 10);
  const Discretization d2 = discretize(build_grid(GridFamily::Pentagon, 2), 1, 10);
  const SaddleSystem s1 = assemble(d1, &c);
  const SaddleSystem s2 = assemble(d2, &c);
  CHECK((Eigen::MatrixXd(s1.A) - Eigen::MatrixXd(s2.A)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((Eigen::MatrixXd(s1.B) - Eigen::MatrixXd(s2.B)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((Eigen::MatrixXd(s1.S) - Eigen::MatrixXd(s2.S)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s1.F - s2.F).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s1.G - s2.G).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shape cache: cached local operators match uncached ones")
{
  const Discretization d = discretize(build_grid(GridFamily::SGrid, 3), 1, 12);
  // the structured families repeat a couple of shapes -> few distinct ops
  std::set<const LocalWeakOps *> distinct;
  for (const auto &p : d.ops) distinct.insert(p.get());
  CHECK(distinct.size() <= 4);

  // a directly built (uncached) operator agrees up to translation
  const int e = d.mesh.n_elements() / 2;
  const LocalWeakOps fresh = make_local_ops(d.mesh, e, 1, 12);
  CHECK((fresh.C - d.element_ops(e).C).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((fresh.G - d.element_ops(e).G).cwiseAbs().maxCoeff() < 1e-9);
  const Vec2 shift = fresh.geo.centroid - d.element_ops(e).geo.centroid;
  CHECK((shift - d.shift[e]).norm() < 1e-14);
}

TEST_CASE("matrix dump is coordinate text")
{
  const ManufacturedCase c = make_case("e1");
  const Discretization d = discretize(build_grid(GridFamily::Triangle, 1), 1, 3);
  const SaddleSystem sys = assemble(d, &c);
  const ReducedSystem red = apply_boundary(sys, d, c);
  std::ostringstream os;
  dump_matrix(red.K, os);
  std::istringstream is(os.str());
  int rows = 0;
  int i, j;
  double v;
  while (is >> i >> j >> v) {
    CHECK(i >= 0);
    CHECK(j >= 0);
    CHECK(i < red.K.rows());
    CHECK(j < red.K.cols());
    rows++;
  }
  CHECK(rows == red.K.nonZeros());
}
