#pragma once
//
// Soft norms and soft metrics on SV(R^n).
//
// A soft norm satisfies
//   N1  ||v|| >= 0, and ||v|| = 0 iff v = theta_0
//   N2  ||r v|| = |r| ||v||
//   N3  ||u + v|| <= ||u|| + ||v||
// The canonical one is ||(x, e)|| = |e| + ||x||_p. Every norm induces the
// metric d(u, v) = ||u - v||; conversely a translation-invariant, homogeneous
// metric gives back a norm through ||v|| = d(v, theta_0).
//
// Norms here are real-valued: each evaluates to one nonnegative real rather
// than a soft real over a parameter set.
//

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>

#include "softnls/error.hpp"
#include "softnls/soft_vector.hpp"

namespace softnls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// l_p norm of a real vector, p in [1, inf].
inline double lp_norm(std::span<const double> x, double p) {
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

inline void require_valid_p(double p) {
  detail::require(!std::isnan(p) && p >= 1.0, "base-norm exponent p must lie in [1, inf]");
}

/// |e| + ||x||_p.
inline double canonical_norm(const SoftVector& v, double p = 2.0) {
  require_valid_p(p);
  return std::abs(v.e()) + lp_norm(v.x(), p);
}

/// Type-erased norm bound to a dimension. Evaluations must be pure.
class SoftNorm {
 public:
  using Fn = std::function<double(const SoftVector&)>;

  SoftNorm(std::size_t dim, Fn fn, std::string name = "custom")
      : dim_(dim), fn_(std::move(fn)), name_(std::move(name)) {
    detail::require(dim_ >= 1, "norm dimension must be >= 1");
    detail::require(static_cast<bool>(fn_), "norm needs an evaluation function");
  }

  double operator()(const SoftVector& v) const {
    detail::require(v.dim() == dim_, [&] { return "norm '" + name_ + "': dimension mismatch"; });
    return fn_(v);
  }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

 private:
  std::size_t dim_;
  Fn fn_;
  std::string name_;
};

class CanonicalSoftNorm {
 public:
  explicit CanonicalSoftNorm(double p = 2.0) : p_(p) { require_valid_p(p); }

  [[nodiscard]] double p() const noexcept { return p_; }
  double operator()(const SoftVector& v) const { return std::abs(v.e()) + lp_norm(v.x(), p_); }

  [[nodiscard]] SoftNorm bind(std::size_t dim) const {
    return SoftNorm(dim, *this, "canonical(p=" + p_label(p_) + ")");
  }

  static std::string p_label(double p) {
    if (std::isinf(p)) return "inf";
    if (p == std::floor(p)) return std::to_string(static_cast<long long>(p));
    return std::to_string(p);
  }

 private:
  double p_;
};

/// Type-erased metric on soft vectors of one dimension.
class SoftMetric {
 public:
  using Fn = std::function<double(const SoftVector&, const SoftVector&)>;

  SoftMetric(std::size_t dim, Fn fn, std::string name = "custom")
      : dim_(dim), fn_(std::move(fn)), name_(std::move(name)) {
    detail::require(dim_ >= 1, "metric dimension must be >= 1");
    detail::require(static_cast<bool>(fn_), "metric needs an evaluation function");
  }

  double operator()(const SoftVector& u, const SoftVector& v) const {
    detail::require(u.dim() == dim_ && v.dim() == dim_, [&] { return "metric '" + name_ + "': dimension mismatch"; });
    return fn_(u, v);
  }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

 private:
  std::size_t dim_;
  Fn fn_;
  std::string name_;
};

/// d(u, v) = ||u - v||.
inline double induced_metric(const SoftNorm& norm, const SoftVector& u, const SoftVector& v) {
  detail::require_same_dim(u, v, "induced_metric");
  return norm(sv_sub(u, v));
}

inline SoftMetric induced_metric(SoftNorm norm) {
  const auto dim = norm.dim();
  auto name = "induced(" + norm.name() + ")";
  return SoftMetric(
      dim, [n = std::move(norm)](const SoftVector& u, const SoftVector& v) { return n(sv_sub(u, v)); },
      std::move(name));
}

/// ||v|| = d(v, theta_0).
inline SoftNorm norm_from_metric(SoftMetric metric) {
  const auto dim = metric.dim();
  auto name = "from_metric(" + metric.name() + ")";
  return SoftNorm(
      dim, [m = std::move(metric), zero = SoftVector::zero(dim)](const SoftVector& v) { return m(v, zero); },
      std::move(name));
}

// ---------------------------------------------------------------------------
// named norms and metrics, including negative controls
// ---------------------------------------------------------------------------

/// "canonical", or the broken controls "no-abs" (v.e, fails N1) and
/// "squared" ((|e| + ||x||_p)^2, fails N3).
inline SoftNorm make_named_norm(const std::string& name, std::size_t dim, double p = 2.0) {
  const CanonicalSoftNorm canon(p);
  if (name == "canonical") return canon.bind(dim);
  if (name == "no-abs") {
    return SoftNorm(dim, [canon](const SoftVector& v) { return v.e() + lp_norm(v.x(), canon.p()); }, "no-abs");
  }
  if (name == "squared") {
    return SoftNorm(dim, [canon](const SoftVector& v) { const double n = canon(v); return n * n; }, "squared");
  }
  throw StructuralError("unknown norm '" + name + "' (expected canonical, no-abs, squared)");
}

/// d(u, v) = 0 if u == v else 1.
inline SoftMetric discrete_metric(std::size_t dim) {
  return SoftMetric(dim, [](const SoftVector& u, const SoftVector& v) { return u == v ? 0.0 : 1.0; }, "discrete");
}

/// d / (1 + d): a metric, but not homogeneous.
inline SoftMetric bounded_metric(SoftMetric base) {
  const auto dim = base.dim();
  auto name = "bounded(" + base.name() + ")";
  return SoftMetric(
      dim, [b = std::move(base)](const SoftVector& u, const SoftVector& v) { const double d = b(u, v); return d / (1.0 + d); },
      std::move(name));
}

/// "induced", "bounded", "discrete", or the broken controls "squared"
/// (||u - v||^2, fails M4) and "param-diff" (u.e - v.e, fails M1 and M3).
inline SoftMetric make_named_metric(const std::string& name, std::size_t dim, double p = 2.0) {
  const CanonicalSoftNorm canon(p);
  if (name == "induced") return induced_metric(canon.bind(dim));
  if (name == "bounded") return bounded_metric(induced_metric(canon.bind(dim)));
  if (name == "discrete") return discrete_metric(dim);
  if (name == "squared") {
    return SoftMetric(
        dim, [canon](const SoftVector& u, const SoftVector& v) { const double d = canon(sv_sub(u, v)); return d * d; },
        "squared");
  }
  if (name == "param-diff") {
    return SoftMetric(dim, [](const SoftVector& u, const SoftVector& v) { return u.e() - v.e(); }, "param-diff");
  }
  throw StructuralError("unknown metric '" + name + "' (expected induced, bounded, discrete, squared, param-diff)");
}

}  // namespace softnls
