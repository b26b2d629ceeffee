#pragma once
//
// The soft vector space SV(X) for X = R^n with parameter set E = R.
//
// A soft vector is the pair (x, e): the soft set that is {x} at parameter e
// and empty elsewhere. Addition and scaling act on both parts,
//
//   (x, e) + (y, e') = (x + y, e + e'),      r (x, e) = (r x, r e),
//
// so SV(X) is isomorphic to R^{n+1} through the lift (x, e) -> (x_1..x_n, e).
// Independence and span are decided in lifted coordinates.
//

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "softnls/error.hpp"

namespace softnls {

class SoftVector;

namespace detail {
struct SoftVectorAccess;
}

class SoftVector {
 public:
  SoftVector(std::vector<double> x, double e) : x_(std::move(x)), e_(e) {
    detail::require(!x_.empty(), "soft vector dimension must be >= 1");
    detail::require(std::isfinite(e_), "soft vector parameter must be finite");
    for (double v : x_) detail::require(std::isfinite(v), "soft vector components must be finite");
  }

  /// The soft zero vector theta_0 = (0, 0).
  static SoftVector zero(std::size_t n) {
    detail::require(n >= 1, "soft vector dimension must be >= 1");
    return SoftVector(std::vector<double>(n, 0.0), 0.0);
  }

  /// Inverse of lift().
  static SoftVector from_lifted(std::span<const double> lifted) {
    detail::require(lifted.size() >= 2, "lifted vector needs at least two coordinates");
    return SoftVector(std::vector<double>(lifted.begin(), lifted.end() - 1), lifted.back());
  }

  [[nodiscard]] std::size_t dim() const noexcept { return x_.size(); }
  [[nodiscard]] std::size_t lifted_dim() const noexcept { return x_.size() + 1; }
  [[nodiscard]] std::span<const double> x() const noexcept { return x_; }
  [[nodiscard]] double e() const noexcept { return e_; }

  /// Coordinate i of the lift; i == dim() is the parameter.
  [[nodiscard]] double lifted(std::size_t i) const { return i < x_.size() ? x_[i] : e_; }

  [[nodiscard]] Eigen::VectorXd lift() const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(lifted_dim()));
    for (std::size_t i = 0; i < x_.size(); ++i) out[static_cast<Eigen::Index>(i)] = x_[i];
    out[static_cast<Eigen::Index>(x_.size())] = e_;
    return out;
  }

  [[nodiscard]] bool is_zero() const noexcept {
    return e_ == 0.0 && std::all_of(x_.begin(), x_.end(), [](double v) { return v == 0.0; });
  }

  friend bool operator==(const SoftVector&, const SoftVector&) = default;

  /// Lexicographic on the lift.
  friend bool lifted_less(const SoftVector& a, const SoftVector& b) {
    for (std::size_t i = 0; i < a.lifted_dim() && i < b.lifted_dim(); ++i) {
      if (a.lifted(i) != b.lifted(i)) return a.lifted(i) < b.lifted(i);
    }
    return a.lifted_dim() < b.lifted_dim();
  }

 private:
  friend struct detail::SoftVectorAccess;
  std::vector<double> x_;
  double e_ = 0.0;
};

namespace detail {

// Write access for in-place kernels. Finiteness is not re-checked.
struct SoftVectorAccess {
  static std::vector<double>& x(SoftVector& v) { return v.x_; }
  static double& e(SoftVector& v) { return v.e_; }
};

inline void require_same_dim(const SoftVector& u, const SoftVector& v, const char* op) {
  require(u.dim() == v.dim(), [&] {
    return std::string(op) + ": dimension mismatch (" + std::to_string(u.dim()) + " vs " + std::to_string(v.dim()) + ")";
  });
}

inline void require_finite_scalar(double r, const char* op) {
  require(std::isfinite(r), [&] { return std::string(op) + ": scalar must be finite"; });
}

}  // namespace detail

/// Soft scalars are plain reals acting as (r x, r e).
using SoftScalar = double;

inline SoftVector sv_zero(std::size_t n) { return SoftVector::zero(n); }

inline SoftVector sv_add(const SoftVector& u, const SoftVector& v) {
  detail::require_same_dim(u, v, "sv_add");
  std::vector<double> x(u.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = u.x()[i] + v.x()[i];
  return SoftVector(std::move(x), u.e() + v.e());
}

inline SoftVector sv_neg(const SoftVector& v) {
  std::vector<double> x(v.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = -v.x()[i];
  return SoftVector(std::move(x), -v.e());
}

inline SoftVector sv_sub(const SoftVector& u, const SoftVector& v) {
  detail::require_same_dim(u, v, "sv_sub");
  std::vector<double> x(u.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = u.x()[i] - v.x()[i];
  return SoftVector(std::move(x), u.e() - v.e());
}

inline SoftVector sv_scale(SoftScalar r, const SoftVector& v) {
  detail::require_finite_scalar(r, "sv_scale");
  std::vector<double> x(v.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = r * v.x()[i];
  return SoftVector(std::move(x), r * v.e());
}

inline SoftVector sv_lincomb(std::span<const SoftScalar> coeffs, std::span<const SoftVector> vecs) {
  detail::require(!vecs.empty(), "sv_lincomb: need at least one term");
  detail::require(coeffs.size() == vecs.size(), "sv_lincomb: coefficient/vector count mismatch");
  SoftVector acc = sv_scale(coeffs[0], vecs[0]);
  for (std::size_t i = 1; i < vecs.size(); ++i) acc = sv_add(acc, sv_scale(coeffs[i], vecs[i]));
  return acc;
}

/// out = u - v without allocation once `out` has the right dimension.
inline void sv_sub_into(const SoftVector& u, const SoftVector& v, SoftVector& out) {
  detail::require_same_dim(u, v, "sv_sub_into");
  auto& ox = detail::SoftVectorAccess::x(out);
  ox.resize(u.dim());
  for (std::size_t i = 0; i < ox.size(); ++i) ox[i] = u.x()[i] - v.x()[i];
  detail::SoftVectorAccess::e(out) = u.e() - v.e();
}

// ---------------------------------------------------------------------------
// independence and span
// ---------------------------------------------------------------------------

inline constexpr double kDefaultRankTol = 1e-10;

/// (n+1) x k matrix whose columns are the lifted vectors.
inline Eigen::MatrixXd lifted_matrix(std::span<const SoftVector> vecs) {
  detail::require(!vecs.empty(), "lifted_matrix: empty list");
  const std::size_t n = vecs[0].dim();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(vecs.size()));
  for (std::size_t j = 0; j < vecs.size(); ++j) {
    detail::require_same_dim(vecs[0], vecs[j], "lifted_matrix");
    m.col(static_cast<Eigen::Index>(j)) = vecs[j].lift();
  }
  return m;
}

namespace detail {

inline Eigen::Index numerical_rank(const Eigen::VectorXd& sv, double tol) {
  if (sv.size() == 0 || sv.maxCoeff() <= 0.0) return 0;
  const double cutoff = tol * sv.maxCoeff();
  return static_cast<Eigen::Index>((sv.array() > cutoff).count());
}

}  // namespace detail

struct IndependenceReport {
  bool independent = false;
  std::size_t rank = 0;
  std::vector<double> singular_values;  // of the lifted matrix, descending
  // Sub-conditions of the sufficient criterion on (x-parts, parameters):
  // the x-parts alone are independent, and every coefficient vector that
  // annihilates the x-parts also annihilates the parameters.
  bool vector_parts_independent = false;
  bool parameters_vanish_on_vector_kernel = false;
};

inline IndependenceReport sv_independence(std::span<const SoftVector> vecs, double tol = kDefaultRankTol) {
  detail::require(!vecs.empty(), "sv_is_independent: empty list");
  detail::require(tol > 0.0 && std::isfinite(tol), "sv_is_independent: tol must be positive");
  const Eigen::MatrixXd m = lifted_matrix(vecs);
  const auto k = m.cols();
  const auto n = m.rows() - 1;

  IndependenceReport rep;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  rep.singular_values.assign(s.data(), s.data() + s.size());
  rep.rank = static_cast<std::size_t>(detail::numerical_rank(s, tol));
  rep.independent = k <= m.rows() && static_cast<Eigen::Index>(rep.rank) == k;

  const Eigen::MatrixXd xs = m.topRows(n);
  Eigen::JacobiSVD<Eigen::MatrixXd> xsvd(xs, Eigen::ComputeFullV);
  const Eigen::VectorXd xsv = xsvd.singularValues();
  const auto xrank = detail::numerical_rank(xsv, tol);
  rep.vector_parts_independent = xrank == k;
  // Kernel of the x-block: trailing right singular vectors.
  const Eigen::MatrixXd kernel = xsvd.matrixV().rightCols(k - xrank);
  const Eigen::RowVectorXd params = m.bottomRows(1);
  const double scale = std::max(1.0, params.norm());
  rep.parameters_vanish_on_vector_kernel = kernel.cols() == 0 || (params * kernel).norm() <= tol * scale;
  return rep;
}

/// True iff r_1 v_1 + ... + r_k v_k = theta_0 forces every r_i = 0, decided
/// by the numerical rank of the lifted matrix.
inline bool sv_is_independent(std::span<const SoftVector> vecs, double tol = kDefaultRankTol) {
  detail::require(!vecs.empty(), "sv_is_independent: empty list");
  detail::require(tol > 0.0 && std::isfinite(tol), "sv_is_independent: tol must be positive");
  if (vecs.size() > vecs[0].dim() + 1) {
    for (const auto& v : vecs) detail::require_same_dim(vecs[0], v, "sv_is_independent");
    return false;
  }
  return sv_independence(vecs, tol).independent;
}

/// True iff lift(v) lies within Euclidean distance `tol` of the column space
/// of the lifted basis (least-squares residual).
inline bool sv_span_contains(std::span<const SoftVector> basis, const SoftVector& v, double tol = kDefaultRankTol) {
  detail::require(tol > 0.0 && std::isfinite(tol), "sv_span_contains: tol must be positive");
  if (basis.empty()) return v.is_zero();
  for (const auto& b : basis) detail::require_same_dim(b, v, "sv_span_contains");
  const Eigen::MatrixXd m = lifted_matrix(basis);
  const Eigen::VectorXd target = v.lift();
  const Eigen::VectorXd coeffs = m.completeOrthogonalDecomposition().solve(target);
  return (m * coeffs - target).norm() <= tol;
}

}  // namespace softnls
