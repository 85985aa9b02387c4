#pragma once

// Dense linear algebra for MNA systems, backed by Eigen. Everything the solver
// needs from a matrix backend goes through DenseMatrix and LuFactorization.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rectsim {

class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(std::size_t pivot)
      : std::runtime_error("singular matrix at pivot " + std::to_string(pivot)), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : m_(Eigen::MatrixXd::Zero(index(n), index(n))) {}

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  double& operator()(std::size_t r, std::size_t c) { return m_(index(r), index(c)); }
  double operator()(std::size_t r, std::size_t c) const { return m_(index(r), index(c)); }
  void set_zero() { m_.setZero(); }

  std::vector<double> multiply(std::span<const double> x) const {
    if (x.size() != size()) throw std::invalid_argument("vector has the wrong length");
    Eigen::VectorXd y = m_ * Eigen::Map<const Eigen::VectorXd>(x.data(), m_.cols());
    return {y.data(), y.data() + y.size()};
  }

  double max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

  const Eigen::MatrixXd& eigen() const noexcept { return m_; }

 private:
  static Eigen::Index index(std::size_t i) { return static_cast<Eigen::Index>(i); }
  Eigen::MatrixXd m_;
};

/// PA = LU with partial pivoting.
class LuFactorization {
 public:
  /// Pivots smaller than `rel_tol * max|A|` are treated as zero.
  explicit LuFactorization(const DenseMatrix& a, double rel_tol = 1e-15) : lu_(a.eigen()) {
    const double tiny = rel_tol * a.max_abs();
    const auto& u = lu_.matrixLU();
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
      if (!(std::abs(u(k, k)) > tiny)) throw SingularMatrixError(static_cast<std::size_t>(k));
    }
  }

  std::vector<double> solve(std::span<const double> b) const {
    const auto n = lu_.matrixLU().rows();
    if (b.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("right-hand side has the wrong length");
    Eigen::VectorXd x = lu_.solve(Eigen::Map<const Eigen::VectorXd>(b.data(), n));
    return {x.data(), x.data() + x.size()};
  }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

inline std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b) {
  return LuFactorization(a).solve(b);
}

}  // namespace rectsim
