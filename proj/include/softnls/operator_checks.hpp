#pragma once
//
// Verification suites for soft linear operators: linearity of black-box
// maps, boundedness, agreement of the two supremum formulations of the
// operator norm, continuity through the Lipschitz bound, the norm axioms for
// the operator norm, and submultiplicativity.
//

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "softnls/norms.hpp"
#include "softnls/operator.hpp"
#include "softnls/opnorm.hpp"
#include "softnls/random.hpp"
#include "softnls/report.hpp"
#include "softnls/sequences.hpp"
#include "softnls/verify.hpp"

namespace softnls {

/// (a) no sampled v != 0 has ||T v|| / ||v|| above result.value + tol;
/// (b) the ratio at result.maximizer equals result.value within tol.
inline VerificationReport op_norm_ratio_check(const SoftLinearOperator& t, const SoftNorm& nin,
                                              const SoftNorm& nout, const OpNormResult& result,
                                              const Sampler& sampler, std::uint64_t n_samples, double tol) {
  detail::require_suite_args(n_samples, tol);
  detail::require_opnorm_args(t, nin, nout);
  detail::require(sampler.dim() == t.in_dim(), "op_norm_ratio_check: sampler dimension must equal in_dim");
  VerificationReport rep("opnorm_ratio", tol, sampler.seed());
  rep.samples = n_samples;

  const double at_max = nout(op_apply(t, result.maximizer)) / nin(result.maximizer);
  rep.record("maximizer_ratio", 0, std::abs(at_max - result.value), {result.maximizer});

  SoftVector image = SoftVector::zero(t.out_dim());
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    auto g = sampler.stream(rep.suite, i);
    const SoftVector v = sampler.nonzero(i, g);
    const double d = nin(v);
    if (!(d > 0.0)) continue;
    op_apply_into(t, v, image);
    rep.record("sup_bound", i, nout(image) / d - result.value, {v});
  }
  return rep;
}

/// ||T v|| <= M ||v|| + tol on every sample.
inline VerificationReport verify_bounded(const SoftLinearOperator& t, double bound, const SoftNorm& nin,
                                         const SoftNorm& nout, const Sampler& sampler, std::uint64_t n_samples,
                                         double tol) {
  detail::require_suite_args(n_samples, tol);
  detail::require_opnorm_args(t, nin, nout);
  detail::require(bound >= 0.0 && std::isfinite(bound), "verify_bounded: M must be finite and >= 0");
  detail::require(sampler.dim() == t.in_dim(), "verify_bounded: sampler dimension must equal in_dim");
  VerificationReport rep("bounded", tol, sampler.seed());
  rep.samples = n_samples;
  SoftVector image = SoftVector::zero(t.out_dim());
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    auto g = sampler.stream(rep.suite, i);
    const SoftVector v = sampler.at(i, g);
    op_apply_into(t, v, image);
    rep.record("bound", i, nout(image) - bound * nin(v), {v});
  }
  return rep;
}

using SoftMap = std::function<SoftVector(const SoftVector&)>;

/// Additivity f(u + v) = f(u) + f(v) and homogeneity f(r u) = r f(u) of a
/// black-box map, measured in the canonical p = 2 norm.
inline VerificationReport check_linearity(const SoftMap& f, const Sampler& sampler, std::uint64_t n_samples,
                                          double tol) {
  detail::require_suite_args(n_samples, tol);
  VerificationReport rep("linearity", tol, sampler.seed());
  rep.samples = n_samples;
  const CanonicalSoftNorm norm(2.0);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    auto g = sampler.stream(rep.suite, i);
    const SoftVector u = sampler.at(i, g);
    const SoftVector v = sampler.gaussian(g);
    const double r = i % 16 == 2 ? 2.0 : sampler.scalar(g);
    const SoftVector fu = f(u);
    const SoftVector fv = f(v);
    const double nfu = norm(fu);
    const double nfv = norm(fv);
    const double add = norm(sv_sub(f(sv_add(u, v)), sv_add(fu, fv)));
    rep.record("additivity", i, add / (1.0 + nfu + nfv), {u, v});
    const double hom = norm(sv_sub(f(sv_scale(r, u)), sv_scale(r, fu)));
    rep.record("homogeneity", i, hom / (1.0 + std::abs(r) * nfu), {u}, r);
  }
  return rep;
}

struct ContinuityParams {
  double eps = 1e-3;
  std::size_t horizon = 1000;
  OpNormConfig opnorm{};
};

/// Continuity through boundedness: for every term k,
/// ||T v_k - T v_0|| <= ||T|| ||v_k - v_0|| + tol, and whenever the sequence
/// converges to v_0 at eps from index k0, the image converges to T v_0 at
/// eps (||T|| + 1) no later than k0.
inline VerificationReport lipschitz_continuity_check(const SoftLinearOperator& t, const SoftNorm& nin,
                                                     const SoftNorm& nout, const SoftVectorSequence& seq, double tol,
                                                     const ContinuityParams& params = {}) {
  detail::require(tol > 0.0 && std::isfinite(tol), "tolerance must be positive");
  detail::require(seq.declared_limit().has_value(), "lipschitz_continuity_check: sequence needs a declared limit");
  detail::require(seq.dim() == t.in_dim(), "lipschitz_continuity_check: sequence dimension must equal in_dim");
  detail::require_opnorm_args(t, nin, nout);
  const SoftVector& limit = *seq.declared_limit();
  const double opn = op_norm(t, nin, nout, params.opnorm).value;

  VerificationReport rep("lipschitz_continuity", tol, params.opnorm.seed);
  rep.samples = params.horizon;
  const auto terms = seq.materialize(params.horizon);
  const SoftVector image_limit = op_apply(t, limit);
  std::vector<SoftVector> images;
  images.reserve(terms.size());
  SoftVector diff = limit;
  SoftVector idiff = image_limit;
  for (std::size_t k = 1; k <= terms.size(); ++k) {
    images.push_back(op_apply(t, terms[k - 1]));
    sv_sub_into(terms[k - 1], limit, diff);
    sv_sub_into(images.back(), image_limit, idiff);
    rep.record("lipschitz", k, nout(idiff) - opn * nin(diff), {terms[k - 1]});
  }

  const auto conv = detail::converges_on(terms, limit, nin, params.eps);
  if (conv.reached()) {
    const auto img = detail::converges_on(images, image_limit, nout, params.eps * (opn + 1.0));
    const bool ok = img.reached() && *img.index <= *conv.index;
    rep.record("image_converges", *conv.index, ok ? 0.0 : detail::indicator_excess(tol), {limit});
  }
  return rep;
}

struct OpNormAxiomParams {
  std::vector<double> scalars{-2.0, -1.0, 0.5, 3.0};
  double tol = 1e-6;
};

/// Norm axioms for the estimated operator norm over a family: ||T|| >= 0;
/// ||T|| <= tol iff T is the zero operator; |||rT|| - |r| ||T||| <= tol (1 + ||T||);
/// ||T + S|| <= ||T|| + ||S|| + tol for every pair of equal shape.
inline VerificationReport verify_opnorm_axioms(std::span<const SoftLinearOperator> ops, double p,
                                               const OpNormConfig& cfg, const OpNormAxiomParams& params = {}) {
  detail::require(!ops.empty(), "verify_opnorm_axioms: empty operator family");
  detail::require(params.tol > 0.0, "verify_opnorm_axioms: tolerance must be positive");
  const CanonicalSoftNorm canon(p);
  VerificationReport rep("opnorm_axioms", params.tol, cfg.seed);
  auto norm_of = [&](const SoftLinearOperator& t) {
    return op_norm(t, canon.bind(t.in_dim()), canon.bind(t.out_dim()), cfg).value;
  };

  std::vector<double> norms;
  norms.reserve(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& t = ops[i];
    const double n = norm_of(t);
    norms.push_back(n);
    ++rep.samples;
    rep.record("nonnegative", i, -n);
    const bool small = n <= params.tol;
    rep.record("zero_iff_zero_operator", i, small == t.is_zero() ? 0.0 : detail::indicator_excess(params.tol));
    for (double r : params.scalars) {
      const double nr = norm_of(op_scale(r, t));
      rep.record("homogeneity", i, std::abs(nr - std::abs(r) * n) / (1.0 + n), {}, r);
    }
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      if (ops[i].in_dim() != ops[j].in_dim() || ops[i].out_dim() != ops[j].out_dim()) continue;
      const double ns = norm_of(op_add(ops[i], ops[j]));
      rep.record("triangle", i * ops.size() + j, ns - norms[i] - norms[j]);
    }
  }
  return rep;
}

namespace detail {

// Estimates the left-hand side with doubling effort until two successive
// estimates agree to `tol` relative (at most `rounds` escalations).
inline double escalated_norm(const SoftLinearOperator& t, const SoftNorm& nin, const SoftNorm& nout,
                             OpNormConfig cfg, double tol, int rounds = 3) {
  double prev = op_norm(t, nin, nout, cfg).value;
  for (int r = 0; r < rounds; ++r) {
    cfg.starts *= 2;
    cfg.iterations *= 2;
    const double next = op_norm(t, nin, nout, cfg).value;
    const bool stable = std::abs(next - prev) <= tol * std::max(1.0, std::abs(next));
    prev = std::max(prev, next);
    if (stable) break;
  }
  return prev;
}

}  // namespace detail

/// ||S o T|| <= ||S|| ||T|| (1 + tol).
inline VerificationReport verify_submultiplicative(const SoftLinearOperator& s, const SoftLinearOperator& t,
                                                   double p, const OpNormConfig& cfg, double tol = 1e-6) {
  detail::require(s.in_dim() == t.out_dim(), "verify_submultiplicative: S.in_dim must equal T.out_dim");
  const CanonicalSoftNorm canon(p);
  VerificationReport rep("submultiplicative", tol, cfg.seed);
  rep.samples = 1;
  const auto n_in = canon.bind(t.in_dim());
  const auto n_mid = canon.bind(t.out_dim());
  const auto n_out = canon.bind(s.out_dim());
  const double ns = op_norm(s, n_mid, n_out, cfg).value;
  const double nt = op_norm(t, n_in, n_mid, cfg).value;
  const double nst = detail::escalated_norm(op_compose(s, t), n_in, n_out, cfg, tol);
  const double rhs = ns * nt;
  rep.record("submultiplicative", 0, rhs > 0.0 ? (nst - rhs) / rhs : nst);
  return rep;
}

/// ||T^k|| <= ||T||^k (1 + tol) for k = 2..n_max.
inline VerificationReport verify_power_bound(const SoftLinearOperator& t, unsigned n_max, double p,
                                             const OpNormConfig& cfg, double tol = 1e-6) {
  detail::require(t.is_square(), "verify_power_bound: operator must be square");
  detail::require(n_max >= 2, "verify_power_bound: n_max must be >= 2");
  const auto norm = CanonicalSoftNorm(p).bind(t.in_dim());
  VerificationReport rep("power_bound", tol, cfg.seed);
  const double nt = op_norm(t, norm, norm, cfg).value;
  for (unsigned k = 2; k <= n_max; ++k) {
    ++rep.samples;
    const double nk = detail::escalated_norm(op_power(t, k), norm, norm, cfg, tol);
    const double rhs = std::pow(nt, static_cast<double>(k));
    rep.record("power_" + std::to_string(k), k, rhs > 0.0 ? (nk - rhs) / rhs : nk);
  }
  return rep;
}

}  // namespace softnls
