#pragma once
//
// Finite-horizon diagnostics for sequences of soft vectors.
//
// Verdicts only describe the window [1, horizon]: CONVERGED_AT(k0) means
// every term from k0 to the horizon lies within eps of the limit, and
// CAUCHY_AT(m) means every pair of terms in [m, horizon] lies within eps of
// each other. Neither is a statement about the infinite tail. Comparisons
// with eps are strict.
//

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "softnls/error.hpp"
#include "softnls/norms.hpp"
#include "softnls/report.hpp"
#include "softnls/soft_vector.hpp"

namespace softnls {

class SoftVectorSequence {
 public:
  using Generator = std::function<SoftVector(std::size_t)>;

  SoftVectorSequence(std::size_t dim, Generator gen, std::optional<SoftVector> declared_limit = std::nullopt,
                     std::string kind = "custom")
      : dim_(dim), gen_(std::move(gen)), limit_(std::move(declared_limit)), kind_(std::move(kind)) {
    detail::require(dim_ >= 1, "sequence dimension must be >= 1");
    detail::require(static_cast<bool>(gen_), "sequence needs a generator");
    if (limit_) detail::require(limit_->dim() == dim_, "declared limit has wrong dimension");
  }

  /// Term k, k >= 1.
  SoftVector operator()(std::size_t k) const {
    detail::require(k >= 1, "sequence index starts at 1");
    auto v = gen_(k);
    detail::require(v.dim() == dim_, "sequence generator returned wrong dimension");
    return v;
  }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::optional<SoftVector>& declared_limit() const noexcept { return limit_; }
  [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

  /// Terms 1..horizon; element k-1 holds term k.
  [[nodiscard]] std::vector<SoftVector> materialize(std::size_t horizon) const {
    std::vector<SoftVector> out;
    out.reserve(horizon);
    for (std::size_t k = 1; k <= horizon; ++k) out.push_back((*this)(k));
    return out;
  }

 private:
  std::size_t dim_;
  Generator gen_;
  std::optional<SoftVector> limit_;
  std::string kind_;
};

// ---------------------------------------------------------------------------
// built-in families
// ---------------------------------------------------------------------------

inline SoftVectorSequence constant_sequence(const SoftVector& v) {
  return SoftVectorSequence(v.dim(), [v](std::size_t) { return v; }, v, "constant");
}

/// base + rho^k direction, |rho| < 1; converges to base.
inline SoftVectorSequence geometric_sequence(const SoftVector& base, const SoftVector& direction, double rho) {
  detail::require_same_dim(base, direction, "geometric_sequence");
  detail::require(std::isfinite(rho) && std::abs(rho) < 1.0, "geometric_sequence: need |rho| < 1");
  return SoftVectorSequence(
      base.dim(),
      [base, direction, rho](std::size_t k) {
        return sv_add(base, sv_scale(std::pow(rho, static_cast<double>(k)), direction));
      },
      base, "geometric");
}

/// base + (1/k) direction; converges to base.
inline SoftVectorSequence harmonic_sequence(const SoftVector& base, const SoftVector& direction) {
  detail::require_same_dim(base, direction, "harmonic_sequence");
  return SoftVectorSequence(
      base.dim(),
      [base, direction](std::size_t k) { return sv_add(base, sv_scale(1.0 / static_cast<double>(k), direction)); },
      base, "harmonic");
}

/// base + (-1)^k direction; no limit unless direction is zero.
inline SoftVectorSequence alternating_sequence(const SoftVector& base, const SoftVector& direction) {
  detail::require_same_dim(base, direction, "alternating_sequence");
  return SoftVectorSequence(
      base.dim(),
      [base, direction](std::size_t k) { return sv_add(base, sv_scale(k % 2 == 0 ? 1.0 : -1.0, direction)); },
      std::nullopt, "alternating");
}

/// Declarative form of the built-in families (CLI input).
struct SequenceSpec {
  std::string kind;
  SoftVector base;
  std::optional<SoftVector> direction;
  double rho = 0.5;
};

inline SoftVectorSequence make_sequence(const SequenceSpec& spec) {
  auto dir = [&]() -> SoftVector {
    detail::require(spec.direction.has_value(), "sequence kind '" + spec.kind + "' needs a direction");
    return *spec.direction;
  };
  if (spec.kind == "constant") return constant_sequence(spec.base);
  if (spec.kind == "geometric") return geometric_sequence(spec.base, dir(), spec.rho);
  if (spec.kind == "harmonic") return harmonic_sequence(spec.base, dir());
  if (spec.kind == "alternating") return alternating_sequence(spec.base, dir());
  throw StructuralError("unknown sequence kind '" + spec.kind + "'");
}

// ---------------------------------------------------------------------------
// verdicts
// ---------------------------------------------------------------------------

/// Index of the first witness, or nullopt when none exists in the window.
struct HorizonVerdict {
  std::optional<std::size_t> index;
  std::size_t horizon = 0;

  [[nodiscard]] bool reached() const noexcept { return index.has_value(); }
  friend bool operator==(const HorizonVerdict&, const HorizonVerdict&) = default;
};

namespace detail {

inline void require_eps_horizon(double eps, std::size_t horizon) {
  require(eps > 0.0 && std::isfinite(eps), "eps must be positive and finite");
  require(horizon >= 1, "horizon must be >= 1");
}

// Witness windows [m, horizon] must hold at least two indices unless the
// horizon is 1; the window {horizon} alone would make every sequence Cauchy.
inline HorizonVerdict windowed(std::size_t m, std::size_t horizon) {
  if (m > horizon || (m == horizon && horizon > 1)) return {std::nullopt, horizon};
  return {m, horizon};
}

// Smallest k0 such that dist(term_k, limit) < eps for all k in [k0, horizon].
inline HorizonVerdict converges_on(const std::vector<SoftVector>& terms, const SoftVector& limit,
                                   const SoftNorm& norm, double eps) {
  const std::size_t horizon = terms.size();
  SoftVector diff = limit;
  for (std::size_t k = horizon; k >= 1; --k) {
    sv_sub_into(terms[k - 1], limit, diff);
    if (!(norm(diff) < eps)) return windowed(k + 1, horizon);
  }
  return {1, horizon};
}

}  // namespace detail

/// Smallest k0 < horizon (k0 = 1 when horizon is 1) such that
/// norm(term_k - limit) < eps for every k in [k0, horizon].
inline HorizonVerdict seq_converges_to(const SoftVectorSequence& seq, const SoftVector& limit, const SoftNorm& norm,
                                       double eps, std::size_t horizon) {
  detail::require_eps_horizon(eps, horizon);
  detail::require(limit.dim() == seq.dim() && norm.dim() == seq.dim(), "seq_converges_to: dimension mismatch");
  return detail::converges_on(seq.materialize(horizon), limit, norm, eps);
}

/// Smallest m < horizon (m = 1 when horizon is 1) such that every pair
/// (i, j), i, j in [m, horizon] (i == j included), has
/// norm(term_i - term_j) < eps. Every pair in the window is
/// evaluated, except that a run of equal consecutive terms is evaluated once,
/// since its members have identical distances to everything.
inline HorizonVerdict seq_is_cauchy(const SoftVectorSequence& seq, const SoftNorm& norm, double eps,
                                    std::size_t horizon) {
  detail::require_eps_horizon(eps, horizon);
  detail::require(norm.dim() == seq.dim(), "seq_is_cauchy: dimension mismatch");
  const auto terms = seq.materialize(horizon);

  // Run r of equal consecutive terms covers indices [start[r], last[r]].
  std::vector<std::size_t> start, last;
  for (std::size_t k = 1; k <= horizon; ++k) {
    if (!start.empty() && terms[k - 1] == terms[last.back() - 1]) {
      last.back() = k;
    } else {
      start.push_back(k);
      last.push_back(k);
    }
  }

  SoftVector diff = terms[0];
  for (std::size_t r = start.size(); r-- > 0;) {
    const SoftVector& a = terms[start[r] - 1];
    sv_sub_into(a, a, diff);
    bool bad = !(norm(diff) < eps);
    for (std::size_t q = start.size() - 1; !bad && q > r; --q) {
      sv_sub_into(a, terms[start[q] - 1], diff);
      bad = !(norm(diff) < eps);
    }
    if (bad) return detail::windowed(last[r] + 1, horizon);
  }
  return {1, horizon};
}

/// Convergence at eps/2 must give a Cauchy witness at eps no later than the
/// convergence witness. Passes vacuously without a convergence witness.
inline VerificationReport check_convergent_implies_cauchy(const SoftVectorSequence& seq, const SoftVector& limit,
                                                          const SoftNorm& norm, double eps, std::size_t horizon) {
  detail::require_eps_horizon(eps, horizon);
  VerificationReport rep("convergent_implies_cauchy", 0.0, 0);
  rep.samples = 1;
  const auto conv = seq_converges_to(seq, limit, norm, eps / 2.0, horizon);
  if (!conv.reached()) {
    rep.record("vacuous", 0, 0.0);
    return rep;
  }
  const auto cauchy = seq_is_cauchy(seq, norm, eps, horizon);
  const bool ok = cauchy.reached() && *cauchy.index <= *conv.index;
  rep.record("cauchy_by_convergence_index", *conv.index, ok ? 0.0 : 1.0, {limit});
  return rep;
}

}  // namespace softnls
