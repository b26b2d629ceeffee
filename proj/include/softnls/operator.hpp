#pragma once
//
// Soft linear operators SV(R^n) -> SV(R^m).
//
// An additive, homogeneous map on SV(R^n) is a linear map on the lift
// R^{n+1}, so it is stored as the (m+1) x (n+1) block matrix
//
//       [ A    b  ]        T(x, e) = (A x + e b,  <c, x> + lam e)
//       [ c^T  lam]
//
// Composition, powers, sums and scaling are block-matrix operations.
//

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "softnls/error.hpp"
#include "softnls/soft_vector.hpp"

namespace softnls {

class SoftLinearOperator {
 public:
  SoftLinearOperator(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double lam) {
    const auto m = a.rows();
    const auto n = a.cols();
    detail::require(m >= 1 && n >= 1, "operator dimensions must be >= 1");
    detail::require(b.size() == m, "operator block b must have out_dim entries");
    detail::require(c.size() == n, "operator block c must have in_dim entries");
    lifted_.resize(m + 1, n + 1);
    lifted_.topLeftCorner(m, n) = a;
    lifted_.topRightCorner(m, 1) = b;
    lifted_.bottomLeftCorner(1, n) = c.transpose();
    lifted_(m, n) = lam;
    detail::require(lifted_.allFinite(), "operator entries must be finite");
  }

  /// From the (out_dim+1) x (in_dim+1) lifted matrix.
  static SoftLinearOperator from_lifted(const Eigen::MatrixXd& lifted) {
    detail::require(lifted.rows() >= 2 && lifted.cols() >= 2, "lifted operator matrix must be at least 2x2");
    const auto m = lifted.rows() - 1;
    const auto n = lifted.cols() - 1;
    return SoftLinearOperator(lifted.topLeftCorner(m, n), lifted.topRightCorner(m, 1),
                              lifted.bottomLeftCorner(1, n).transpose(), lifted(m, n));
  }

  static SoftLinearOperator identity(std::size_t n) {
    return from_lifted(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1)));
  }

  static SoftLinearOperator zero(std::size_t out_dim, std::size_t in_dim) {
    return from_lifted(
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(out_dim + 1), static_cast<Eigen::Index>(in_dim + 1)));
  }

  [[nodiscard]] std::size_t in_dim() const noexcept { return static_cast<std::size_t>(lifted_.cols() - 1); }
  [[nodiscard]] std::size_t out_dim() const noexcept { return static_cast<std::size_t>(lifted_.rows() - 1); }
  [[nodiscard]] bool is_square() const noexcept { return in_dim() == out_dim(); }

  [[nodiscard]] const Eigen::MatrixXd& lifted() const noexcept { return lifted_; }
  [[nodiscard]] Eigen::MatrixXd a() const { return lifted_.topLeftCorner(lifted_.rows() - 1, lifted_.cols() - 1); }
  [[nodiscard]] Eigen::VectorXd b() const { return lifted_.topRightCorner(lifted_.rows() - 1, 1); }
  [[nodiscard]] Eigen::VectorXd c() const {
    return lifted_.bottomLeftCorner(1, lifted_.cols() - 1).transpose();
  }
  [[nodiscard]] double lam() const { return lifted_(lifted_.rows() - 1, lifted_.cols() - 1); }

  [[nodiscard]] bool is_zero() const { return (lifted_.array() == 0.0).all(); }

  friend bool operator==(const SoftLinearOperator& s, const SoftLinearOperator& t) {
    return s.lifted_.rows() == t.lifted_.rows() && s.lifted_.cols() == t.lifted_.cols() && s.lifted_ == t.lifted_;
  }

 private:
  Eigen::MatrixXd lifted_;
};

/// out = T(v), reusing out's storage; out is resized to out_dim and must
/// not alias v.
inline void op_apply_into(const SoftLinearOperator& t, const SoftVector& v, SoftVector& out) {
  detail::require(v.dim() == t.in_dim(), "op_apply: input dimension mismatch");
  detail::require(&v != &out, "op_apply_into: output aliases input");
  const auto& l = t.lifted();
  const auto rows = l.rows();
  const auto cols = l.cols();
  auto& ox = detail::SoftVectorAccess::x(out);
  ox.resize(static_cast<std::size_t>(rows - 1));
  for (Eigen::Index i = 0; i < rows; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j + 1 < cols; ++j) s += l(i, j) * v.x()[static_cast<std::size_t>(j)];
    s += l(i, cols - 1) * v.e();
    if (i + 1 < rows) {
      ox[static_cast<std::size_t>(i)] = s;
    } else {
      detail::SoftVectorAccess::e(out) = s;
    }
  }
}

inline SoftVector op_apply(const SoftLinearOperator& t, const SoftVector& v) {
  detail::require(v.dim() == t.in_dim(), "op_apply: input dimension mismatch");
  const Eigen::VectorXd y = t.lifted() * v.lift();
  return SoftVector::from_lifted(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
}

/// S o T: apply T first.
inline SoftLinearOperator op_compose(const SoftLinearOperator& s, const SoftLinearOperator& t) {
  detail::require(s.in_dim() == t.out_dim(), "op_compose: S.in_dim must equal T.out_dim");
  return SoftLinearOperator::from_lifted(s.lifted() * t.lifted());
}

inline SoftLinearOperator op_power(const SoftLinearOperator& t, unsigned k) {
  detail::require(t.is_square(), "op_power: operator must be square");
  detail::require(k >= 1, "op_power: exponent must be >= 1");
  Eigen::MatrixXd acc = t.lifted();
  for (unsigned i = 1; i < k; ++i) acc = (acc * t.lifted()).eval();
  return SoftLinearOperator::from_lifted(acc);
}

inline SoftLinearOperator op_add(const SoftLinearOperator& s, const SoftLinearOperator& t) {
  detail::require(s.in_dim() == t.in_dim() && s.out_dim() == t.out_dim(), "op_add: dimension mismatch");
  return SoftLinearOperator::from_lifted(s.lifted() + t.lifted());
}

inline SoftLinearOperator op_scale(double r, const SoftLinearOperator& t) {
  detail::require_finite_scalar(r, "op_scale");
  return SoftLinearOperator::from_lifted(r * t.lifted());
}

}  // namespace softnls
