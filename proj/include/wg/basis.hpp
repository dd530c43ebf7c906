// Scaled monomial bases on elements, Legendre-style bases on edges, Gram
// (mass) matrices, per-element orthonormalization, and L2 projections.

#ifndef WG_BASIS_HPP
#define WG_BASIS_HPP

#include "wg/geometry.hpp"
#include "wg/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <vector>

namespace wg
{

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// dim P_d in 2D
inline int poly_space_dim(int degree)
{
  return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2;
}

/// Monomials ((x-cx)/h)^a ((y-cy)/h)^b, graded lexicographic: for each total
/// degree l = 0..d, powers (0,l), (1,l-1), ..., (l,0). Function 0 is 1.
struct ScaledMonomialBasis {
  Vec2 center = Vec2::Zero();
  double scale = 1.0;
  int degree = 0;
  std::vector<Eigen::Vector2i> powers;

  ScaledMonomialBasis() = default;
  ScaledMonomialBasis(const Vec2 &c, double h, int d) : center(c), scale(h), degree(d)
  {
    powers.reserve(poly_space_dim(d));
    for (int l = 0; l <= d; l++) {
      for (int i = 0; i <= l; i++) powers.emplace_back(i, l - i);
    }
  }

  int dim() const { return static_cast<int>(powers.size()); }

  double value(int i, const Vec2 &p) const
  {
    const double x = (p.x() - center.x()) / scale;
    const double y = (p.y() - center.y()) / scale;
    return std::pow(x, powers[i][0]) * std::pow(y, powers[i][1]);
  }

  Vec2 gradient(int i, const Vec2 &p) const
  {
    const double x = (p.x() - center.x()) / scale;
    const double y = (p.y() - center.y()) / scale;
    const int a = powers[i][0];
    const int b = powers[i][1];
    Vec2 g = Vec2::Zero();
    if (a > 0) g.x() = a * std::pow(x, a - 1) * std::pow(y, b) / scale;
    if (b > 0) g.y() = b * std::pow(x, a) * std::pow(y, b - 1) / scale;
    return g;
  }

  /// (npts x dim) evaluation matrix
  Eigen::MatrixXd values(const std::vector<Vec2> &pts) const
  {
    Eigen::MatrixXd V(pts.size(), dim());
    for (std::size_t q = 0; q < pts.size(); q++) {
      for (int i = 0; i < dim(); i++) V(q, i) = value(i, pts[q]);
    }
    return V;
  }
};

/// Gram matrix under a quadrature rule; symmetric by construction.
inline Eigen::MatrixXd mass_matrix(const ScaledMonomialBasis &basis, const QuadratureRule &rule)
{
  const Eigen::MatrixXd V = basis.values(rule.points);
  return V.transpose() * rule.weights.asDiagonal() * V;
}

namespace detail
{

/// Orthonormalizing transform from a weighted point-evaluation matrix:
/// QR of diag(sqrt(w)) V gives T = R^-1 with Gram(V T) = I under the rule.
/// Avoids forming (and squaring the conditioning of) the raw Gram.
inline Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd &V, const Eigen::VectorXd &w)
{
  const int d = static_cast<int>(V.cols());
  if (V.rows() < d) throw NumericalError("orthonormalization: rule has too few points");
  Eigen::MatrixXd A = w.array().sqrt().matrix().asDiagonal() * V;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd R = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  double rmin = 1e300, rmax = 0.0;
  for (int j = 0; j < d; j++) {
    const double rj = std::abs(R(j, j));
    rmin = std::min(rmin, rj);
    rmax = std::max(rmax, rj);
    if (R(j, j) < 0) R.row(j) *= -1.0; // function 0 stays a positive constant
  }
  if (!(rmin > 0.0) || rmax / rmin > 1e15) {
    throw NumericalError("basis orthonormalization is numerically singular (cond approx " +
                         std::to_string(rmax / std::max(rmin, 1e-300)) + ")");
  }
  return R.template triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(d, d));
}

} // namespace detail

/// Orthonormalized polynomial family on an element: function j is
/// sum_i transform(i,j) * monomial_i, with identity Gram under the build rule.
class ElementBasis {
public:
  ElementBasis() = default;
  ElementBasis(const ScaledMonomialBasis &mono, const QuadratureRule &rule) : mono_(mono)
  {
    transform_ = detail::orthonormalize(mono_.values(rule.points), rule.weights);
  }

  int dim() const { return mono_.dim(); }
  int degree() const { return mono_.degree; }
  const ScaledMonomialBasis &monomials() const { return mono_; }
  const Eigen::MatrixXd &transform() const { return transform_; }

  double value(int j, const Vec2 &p) const
  {
    double s = 0.0;
    for (int i = 0; i <= j; i++) s += transform_(i, j) * mono_.value(i, p);
    return s;
  }

  Vec2 gradient(int j, const Vec2 &p) const
  {
    Vec2 g = Vec2::Zero();
    for (int i = 0; i <= j; i++) g += transform_(i, j) * mono_.gradient(i, p);
    return g;
  }

  /// (npts x dim) values
  Eigen::MatrixXd values(const std::vector<Vec2> &pts) const
  {
    return mono_.values(pts) * transform_;
  }

  /// (npts x dim) partial derivatives
  void gradients(const std::vector<Vec2> &pts, Eigen::MatrixXd &dx, Eigen::MatrixXd &dy) const
  {
    Eigen::MatrixXd gx(pts.size(), dim()), gy(pts.size(), dim());
    for (std::size_t q = 0; q < pts.size(); q++) {
      for (int i = 0; i < dim(); i++) {
        const Vec2 g = mono_.gradient(i, pts[q]);
        gx(q, i) = g.x();
        gy(q, i) = g.y();
      }
    }
    dx = gx * transform_;
    dy = gy * transform_;
  }

private:
  ScaledMonomialBasis mono_;
  Eigen::MatrixXd transform_;
};

/// Orthonormal basis of P_k(e) in the arc-length parameter s in [0,1] along
/// the global edge orientation (endpoint a -> b).
class EdgeBasis {
public:
  EdgeBasis() = default;
  EdgeBasis(const Vec2 &a, const Vec2 &b, int degree)
    : a_(a), b_(b), length_((b - a).norm()), degree_(degree)
  {
    const EdgeRule rule = edge_rule(length_, 2 * degree + 2);
    Eigen::MatrixXd V(rule.s.size(), degree + 1);
    for (long q = 0; q < rule.s.size(); q++) {
      for (int m = 0; m <= degree; m++) V(q, m) = std::pow(rule.s[q] - 0.5, m);
    }
    transform_ = detail::orthonormalize(V, rule.weights);
  }

  int dim() const { return degree_ + 1; }
  int degree() const { return degree_; }
  double length() const { return length_; }
  Vec2 point(double s) const { return a_ + s * (b_ - a_); }
  Vec2 direction() const { return (b_ - a_) / length_; }

  double value(int j, double s) const
  {
    double v = 0.0;
    for (int m = 0; m <= j; m++) v += transform_(m, j) * std::pow(s - 0.5, m);
    return v;
  }

  Eigen::MatrixXd values(const Eigen::VectorXd &s) const
  {
    Eigen::MatrixXd V(s.size(), dim());
    for (long q = 0; q < s.size(); q++) {
      for (int m = 0; m < dim(); m++) V(q, m) = std::pow(s[q] - 0.5, m);
    }
    return V * transform_;
  }

private:
  Vec2 a_ = Vec2::Zero(), b_ = Vec2::Zero();
  double length_ = 0.0;
  int degree_ = 0;
  Eigen::MatrixXd transform_;
};

/// L2 projection of f onto an orthonormal element basis: with identity Gram
/// the coefficients are the weighted moments. Exact on P_degree when the rule
/// is exact to 2*degree (and to degree + deg f for polynomial f).
inline Eigen::VectorXd l2_project_element(const std::function<double(const Vec2 &)> &f,
                                          const ElementBasis &basis, const QuadratureRule &rule)
{
  Eigen::VectorXd fw(rule.weights.size());
  for (long q = 0; q < fw.size(); q++) fw[q] = rule.weights[q] * f(rule.points[q]);
  return basis.values(rule.points).transpose() * fw;
}

/// L2 projection of a trace onto an edge basis (f takes the physical point).
inline Eigen::VectorXd l2_project_edge(const std::function<double(const Vec2 &)> &f,
                                       const EdgeBasis &basis, const EdgeRule &rule)
{
  Eigen::VectorXd fw(rule.weights.size());
  for (long q = 0; q < fw.size(); q++) fw[q] = rule.weights[q] * f(basis.point(rule.s[q]));
  return basis.values(rule.s).transpose() * fw;
}

} // namespace wg

#endif
