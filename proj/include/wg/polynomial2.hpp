// Dense bivariate polynomials with exact differentiation/arithmetic. Used to
// derive problem data (f, g, curl u) symbolically for polynomial test cases.

#ifndef WG_POLYNOMIAL2_HPP
#define WG_POLYNOMIAL2_HPP

#include "wg/geometry.hpp"

#include <Eigen/Dense>

namespace wg
{

/// p(x,y) = sum_ij c(i,j) x^i y^j
class Poly2 {
public:
  Poly2() : c_(Eigen::MatrixXd::Zero(1, 1)) {}
  explicit Poly2(Eigen::MatrixXd coeffs) : c_(std::move(coeffs)) {}

  static Poly2 constant(double v)
  {
    Poly2 p;
    p.c_(0, 0) = v;
    return p;
  }
  static Poly2 x()
  {
    Poly2 p{Eigen::MatrixXd::Zero(2, 1)};
    p.c_(1, 0) = 1.0;
    return p;
  }
  static Poly2 y()
  {
    Poly2 p{Eigen::MatrixXd::Zero(1, 2)};
    p.c_(0, 1) = 1.0;
    return p;
  }

  const Eigen::MatrixXd &coeffs() const { return c_; }

  double operator()(const Vec2 &p) const
  {
    double v = 0.0;
    for (long i = c_.rows() - 1; i >= 0; i--) {
      double row = 0.0;
      for (long j = c_.cols() - 1; j >= 0; j--) row = row * p.y() + c_(i, j);
      v = v * p.x() + row;
    }
    return v;
  }

  Poly2 dx() const
  {
    if (c_.rows() == 1) return Poly2{};
    Eigen::MatrixXd d(c_.rows() - 1, c_.cols());
    for (long i = 1; i < c_.rows(); i++) d.row(i - 1) = i * c_.row(i);
    return Poly2{std::move(d)};
  }

  Poly2 dy() const
  {
    if (c_.cols() == 1) return Poly2{};
    Eigen::MatrixXd d(c_.rows(), c_.cols() - 1);
    for (long j = 1; j < c_.cols(); j++) d.col(j - 1) = j * c_.col(j);
    return Poly2{std::move(d)};
  }

  friend Poly2 operator+(const Poly2 &a, const Poly2 &b)
  {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(std::max(a.c_.rows(), b.c_.rows()),
                                              std::max(a.c_.cols(), b.c_.cols()));
    c.topLeftCorner(a.c_.rows(), a.c_.cols()) = a.c_;
    c.topLeftCorner(b.c_.rows(), b.c_.cols()) += b.c_;
    return Poly2{std::move(c)};
  }

  friend Poly2 operator-(const Poly2 &a, const Poly2 &b) { return a + (-1.0) * b; }

  friend Poly2 operator*(double s, const Poly2 &a) { return Poly2{s * a.c_}; }

  friend Poly2 operator*(const Poly2 &a, const Poly2 &b)
  {
    Eigen::MatrixXd c =
        Eigen::MatrixXd::Zero(a.c_.rows() + b.c_.rows() - 1, a.c_.cols() + b.c_.cols() - 1);
    for (long i = 0; i < a.c_.rows(); i++) {
      for (long j = 0; j < a.c_.cols(); j++) {
        if (a.c_(i, j) != 0.0) c.block(i, j, b.c_.rows(), b.c_.cols()) += a.c_(i, j) * b.c_;
      }
    }
    return Poly2{std::move(c)};
  }

private:
  Eigen::MatrixXd c_;
};

} // namespace wg

#endif
