#include <gtest/gtest.h>

#include "softnls/json_io.hpp"
#include "softnls/norms.hpp"
#include "softnls/verify.hpp"

using namespace softnls;

namespace {

SoftVector sv(std::vector<double> x, double e) { return SoftVector(std::move(x), e); }

const double kPs[] = {1.0, 2.0, kInf};

}  // namespace

TEST(CanonicalNorm, Examples) {
  EXPECT_DOUBLE_EQ(canonical_norm(sv({3, 4}, 2), 2.0), 7.0);
  for (double p : kPs) EXPECT_EQ(canonical_norm(sv_zero(3), p), 0.0);
  EXPECT_DOUBLE_EQ(canonical_norm(sv_scale(-2, sv({3, 4}, 2)), 2.0), 14.0);
  EXPECT_DOUBLE_EQ(canonical_norm(sv({3, -4}, -2), 1.0), 9.0);
  EXPECT_DOUBLE_EQ(canonical_norm(sv({3, -4}, -2), kInf), 6.0);
  EXPECT_NEAR(canonical_norm(sv({3, 4}, 0), 3.0), std::cbrt(91.0), 1e-12);
}

TEST(CanonicalNorm, RejectsBadExponent) {
  EXPECT_THROW(CanonicalSoftNorm(0.5), StructuralError);
  EXPECT_THROW(canonical_norm(sv({1}, 1), std::nan("")), StructuralError);
  EXPECT_NO_THROW((void)CanonicalSoftNorm(kInf).p());
}

TEST(CanonicalNorm, NegationInvariant) {
  const Sampler s(4, 3);
  for (double p : kPs) {
    const CanonicalSoftNorm n(p);
    for (std::uint64_t i = 0; i < 500; ++i) {
      auto g = s.stream("neg", i);
      const auto v = s.gaussian(g);
      EXPECT_EQ(n(sv_neg(v)), n(v));
    }
  }
}

TEST(SoftNorm, DimensionChecked) {
  const auto n = CanonicalSoftNorm(2).bind(2);
  EXPECT_THROW(n(sv_zero(3)), StructuralError);
  EXPECT_EQ(n.dim(), 2u);
}

TEST(InducedMetric, Examples) {
  const auto n = CanonicalSoftNorm(2).bind(2);
  const auto v = sv({1, -2}, 0.5);
  EXPECT_EQ(induced_metric(n, v, v), 0.0);
  EXPECT_DOUBLE_EQ(induced_metric(n, sv({1, 0}, 0), sv({0, 0}, 1)), 2.0);
  EXPECT_THROW(induced_metric(n, v, sv_zero(3)), StructuralError);

  const Sampler s(2, 17);
  const auto d = induced_metric(n);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto g = s.stream("sym", i);
    const auto a = s.gaussian(g), b = s.gaussian(g);
    EXPECT_EQ(d(a, b), d(b, a));
  }
}

TEST(NormFromMetric, RoundTripsCanonical) {
  const auto n = CanonicalSoftNorm(2).bind(3);
  const auto back = norm_from_metric(induced_metric(n));
  EXPECT_EQ(back(sv_zero(3)), 0.0);
  const Sampler s(3, 21);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto g = s.stream("rt", i);
    const auto v = s.gaussian(g);
    EXPECT_NEAR(back(v), n(v), 1e-12);
  }
}

TEST(NormFromMetric, DiscreteMetricFailsHomogeneity) {
  const auto n = norm_from_metric(discrete_metric(2));
  const auto v = sv({1, 1}, 1);
  EXPECT_EQ(n(v), 1.0);
  EXPECT_EQ(n(sv_scale(3, v)), 1.0);  // not 3
  const auto rep = verify_norm_axioms(n, Sampler(2, 1), 200, 1e-9);
  EXPECT_GT(rep.violations_of("N2"), 0u);
}

TEST(NormAxioms, CanonicalPasses) {
  for (double p : kPs) {
    for (std::size_t n : {1u, 3u}) {
      const auto rep = verify_norm_axioms(CanonicalSoftNorm(p).bind(n), Sampler(n, 5), 5000, 1e-9);
      EXPECT_TRUE(rep.passed()) << "p=" << p << " n=" << n << " max=" << rep.max_violation;
      EXPECT_TRUE(rep.counterexamples.empty());
      EXPECT_LE(rep.max_violation, rep.tolerance);
      EXPECT_EQ(rep.samples, 5000u);
    }
  }
}

TEST(NormAxioms, NegativeControls) {
  const auto no_abs = verify_norm_axioms(make_named_norm("no-abs", 2), Sampler(2, 5), 2000, 1e-9);
  EXPECT_GT(no_abs.violations_of("N1_nonnegative"), 0u);
  EXPECT_FALSE(no_abs.counterexamples.empty());
  EXPECT_GT(no_abs.max_violation, no_abs.tolerance);

  const auto squared = verify_norm_axioms(make_named_norm("squared", 2), Sampler(2, 5), 2000, 1e-9);
  EXPECT_GT(squared.violations_of("N3"), 0u);
  EXPECT_LE(squared.counterexamples.size(), VerificationReport::kMaxCounterexamples);
  EXPECT_THROW(make_named_norm("bogus", 2), StructuralError);
}

TEST(NormAxioms, ArgumentErrors) {
  const auto n = CanonicalSoftNorm(2).bind(2);
  EXPECT_THROW(verify_norm_axioms(n, Sampler(2, 1), 0, 1e-9), StructuralError);
  EXPECT_THROW(verify_norm_axioms(n, Sampler(2, 1), 10, 0.0), StructuralError);
  EXPECT_THROW(verify_norm_axioms(n, Sampler(3, 1), 10, 1e-9), StructuralError);
}

TEST(MetricAxioms, InducedPassesAndControlsFail) {
  for (double p : kPs) {
    const auto rep = verify_metric_axioms(make_named_metric("induced", 3, p), Sampler(3, 8), 5000, 1e-9);
    EXPECT_TRUE(rep.passed()) << "p=" << p << " max=" << rep.max_violation;
  }
  const auto pd = verify_metric_axioms(make_named_metric("param-diff", 2), Sampler(2, 8), 2000, 1e-9);
  EXPECT_GT(pd.violations_of("M1"), 0u);
  EXPECT_GT(pd.violations_of("M3"), 0u);

  const auto sq = verify_metric_axioms(make_named_metric("squared", 2), Sampler(2, 8), 2000, 1e-9);
  EXPECT_GT(sq.violations_of("M4"), 0u);
  EXPECT_EQ(sq.violations_of("M1"), 0u);

  // The discrete metric is a metric.
  EXPECT_TRUE(verify_metric_axioms(discrete_metric(2), Sampler(2, 8), 2000, 1e-9).passed());
  EXPECT_TRUE(verify_metric_axioms(make_named_metric("bounded", 2), Sampler(2, 8), 2000, 1e-9).passed());
}

TEST(MetricAxioms, ConverseSpotCheckCatchesDegenerateMetric) {
  // Ignores the parameter: d((x,e),(x,e')) = 0 for e != e'.
  const SoftMetric m(2, [](const SoftVector& u, const SoftVector& v) { return lp_norm(sv_sub(u, v).x(), 2.0); });
  const auto rep = verify_metric_axioms(m, Sampler(2, 8), 2000, 1e-9);
  EXPECT_GT(rep.violations_of("M2_converse") + rep.violations_of("M4"), 0u);
  const SoftMetric zero(2, [](const SoftVector&, const SoftVector&) { return 0.0; });
  EXPECT_GT(verify_metric_axioms(zero, Sampler(2, 8), 200, 1e-9).violations_of("M2_converse"), 0u);
}

TEST(Compatibility, InducedPassesBoundedFailsHomogeneity) {
  for (double p : kPs) {
    const auto rep =
        verify_metric_norm_compatibility(make_named_metric("induced", 2, p), Sampler(2, 4), 5000, 1e-9);
    EXPECT_TRUE(rep.passed()) << "p=" << p;
  }
  const auto b = verify_metric_norm_compatibility(make_named_metric("bounded", 2), Sampler(2, 4), 2000, 1e-9);
  EXPECT_GT(b.violations_of("homogeneity"), 0u);
  EXPECT_EQ(b.violations_of("translation"), 0u);
}

TEST(Compatibility, TranslationByZeroIsExact) {
  const auto d = make_named_metric("induced", 3);
  const Sampler s(3, 2);
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto g = s.stream("t0", i);
    const auto u = s.gaussian(g), v = s.gaussian(g), z = sv_zero(3);
    EXPECT_EQ(d(sv_add(u, z), sv_add(v, z)), d(u, v));
  }
}

// Metrics induced by norms that pass the norm suite pass the metric suites.
TEST(Compatibility, NormSuiteImpliesMetricSuites) {
  for (double p : kPs) {
    const auto n = CanonicalSoftNorm(p).bind(2);
    ASSERT_TRUE(verify_norm_axioms(n, Sampler(2, 6), 2000, 1e-9).passed());
    const auto m = induced_metric(n);
    EXPECT_TRUE(verify_metric_axioms(m, Sampler(2, 6), 2000, 1e-9).passed());
    EXPECT_TRUE(verify_metric_norm_compatibility(m, Sampler(2, 6), 2000, 1e-9).passed());
  }
}

TEST(Reports, DeterministicAndSchemaValid) {
  const auto n = make_named_norm("squared", 2);
  const auto a = io::to_json(verify_norm_axioms(n, Sampler(2, 42), 500, 1e-9));
  const auto b = io::to_json(verify_norm_axioms(n, Sampler(2, 42), 500, 1e-9));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(io::validate_report_json(a), "");
  const auto c = io::to_json(verify_norm_axioms(n, Sampler(2, 43), 500, 1e-9));
  EXPECT_NE(a.dump(), c.dump());
  EXPECT_EQ(io::validate_report_json(io::to_json(verify_norm_axioms(CanonicalSoftNorm().bind(2), Sampler(2, 1), 50, 1e-9))), "");
}
