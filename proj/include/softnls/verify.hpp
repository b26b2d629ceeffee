#pragma once
//
// Sampling verifiers for the norm axioms (N1-N3), the metric axioms (M1-M4)
// and metric/norm compatibility (translation invariance and homogeneity).
//
// Sample i draws from its own substream. The first Sampler::special_count()
// samples use the zero vector and the lifted axes as the first argument;
// fixed residues of i mod 8 force coincident pairs, pairs differing only in
// the parameter, near-coincident pairs,
// collinear triples and translations to theta_0, which random draws would
// essentially never produce.
//

#include <cmath>
#include <cstdint>
#include <string>

#include "softnls/norms.hpp"
#include "softnls/random.hpp"
#include "softnls/report.hpp"

namespace softnls {

namespace detail {

inline void require_suite_args(std::uint64_t n_samples, double tol) {
  require(n_samples >= 1, "verifier needs at least one sample");
  require(tol > 0.0 && std::isfinite(tol), "verifier tolerance must be positive and finite");
}

// Magnitude recorded for yes/no failures; always above the tolerance.
inline double indicator_excess(double tol) { return std::max(1.0, 2.0 * tol); }

inline double sample_scalar(const Sampler& s, std::uint64_t i, Engine& g) {
  switch (i % 16) {
    case 2: return -1.0;
    case 10: return 0.0;
    default: return s.scalar(g);
  }
}

inline SoftVector near(const SoftVector& u, const Sampler& s, Engine& g) {
  return sv_add(u, sv_scale(1e-6, s.gaussian(g)));
}

}  // namespace detail

inline VerificationReport verify_norm_axioms(const SoftNorm& norm, const Sampler& sampler,
                                             std::uint64_t n_samples, double tol) {
  detail::require_suite_args(n_samples, tol);
  detail::require(sampler.dim() == norm.dim(), "verify_norm_axioms: sampler/norm dimension mismatch");
  VerificationReport rep("norm_axioms", tol, sampler.seed());
  rep.samples = n_samples;

  const auto zero = SoftVector::zero(norm.dim());
  rep.record("N1_zero", 0, std::abs(norm(zero)), {zero});

  for (std::uint64_t i = 0; i < n_samples; ++i) {
    auto g = sampler.stream(rep.suite, i);
    const SoftVector u = sampler.at(i, g);
    const SoftVector v = i % 8 == 3 ? u : sampler.gaussian(g);
    const double r = detail::sample_scalar(sampler, i, g);

    const double nu = norm(u);
    const double nv = norm(v);
    rep.record("N1_nonnegative", i, -nu, {u});
    if (!u.is_zero() && !(nu > 0.0)) rep.record("N1_definite", i, detail::indicator_excess(tol), {u});
    if (u.is_zero()) rep.record("N1_zero", i, std::abs(nu), {u});

    const double nru = norm(sv_scale(r, u));
    rep.record("N2", i, std::abs(nru - std::abs(r) * nu) / (1.0 + std::abs(nu)), {u}, r);

    const double nsum = norm(sv_add(u, v));
    rep.record("N3", i, nsum - nu - nv, {u, v});
  }
  return rep;
}

inline VerificationReport verify_metric_axioms(const SoftMetric& metric, const Sampler& sampler,
                                               std::uint64_t n_samples, double tol) {
  detail::require_suite_args(n_samples, tol);
  detail::require(sampler.dim() == metric.dim(), "verify_metric_axioms: sampler/metric dimension mismatch");
  VerificationReport rep("metric_axioms", tol, sampler.seed());
  rep.samples = n_samples;

  for (std::uint64_t i = 0; i < n_samples; ++i) {
    auto g = sampler.stream(rep.suite, i);
    const SoftVector u = sampler.at(i, g);
    SoftVector v = u;
    switch (i % 8) {
      case 3: break;
      case 4: v = sv_add(u, SoftVector(std::vector<double>(u.dim(), 0.0), 1.0)); break;
      case 5: v = detail::near(u, sampler, g); break;
      default: v = sampler.gaussian(g); break;
    }
    // Case 6 puts v at the midpoint of u and w.
    const SoftVector w = i % 8 == 6 ? sv_sub(sv_scale(2.0, v), u) : sampler.gaussian(g);

    const double duv = metric(u, v);
    const double dvu = metric(v, u);
    const double duu = metric(u, u);
    const double dvw = metric(v, w);
    const double duw = metric(u, w);

    rep.record("M1", i, -duv, {u, v});
    rep.record("M2", i, std::abs(duu), {u});
    if (!(u == v) && !(duv > 0.0)) rep.record("M2_converse", i, detail::indicator_excess(tol), {u, v});
    rep.record("M3", i, std::abs(duv - dvu) / (1.0 + std::max(std::abs(duv), std::abs(dvu))), {u, v});
    rep.record("M4", i, duw - duv - dvw, {u, v, w});
  }
  return rep;
}

/// Translation invariance d(u+w, v+w) = d(u, v) and homogeneity
/// d(ru, rv) = |r| d(u, v). Passing both means norm_from_metric(metric) is a
/// norm whose induced metric is `metric`, at sample resolution.
inline VerificationReport verify_metric_norm_compatibility(const SoftMetric& metric, const Sampler& sampler,
                                                           std::uint64_t n_samples, double tol) {
  detail::require_suite_args(n_samples, tol);
  detail::require(sampler.dim() == metric.dim(),
                  "verify_metric_norm_compatibility: sampler/metric dimension mismatch");
  VerificationReport rep("metric_norm_compatibility", tol, sampler.seed());
  rep.samples = n_samples;

  for (std::uint64_t i = 0; i < n_samples; ++i) {
    auto g = sampler.stream(rep.suite, i);
    const SoftVector u = sampler.at(i, g);
    const SoftVector v = i % 8 == 3 ? u : sampler.gaussian(g);
    SoftVector w = sampler.gaussian(g);
    if (i % 8 == 7) w = sv_neg(v);
    if (i % 8 == 1) w = SoftVector::zero(sampler.dim());
    const double r = detail::sample_scalar(sampler, i, g);

    const double duv = metric(u, v);
    const double dt = metric(sv_add(u, w), sv_add(v, w));
    rep.record("translation", i, std::abs(dt - duv) / (1.0 + std::abs(duv)), {u, v, w});

    const double ds = metric(sv_scale(r, u), sv_scale(r, v));
    const double expect = std::abs(r) * duv;
    rep.record("homogeneity", i, std::abs(ds - expect) / (1.0 + std::abs(expect)), {u, v}, r);
  }
  return rep;
}

}  // namespace softnls
