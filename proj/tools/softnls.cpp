// softnls: runs the verification suites and the operator-norm estimator on
// JSON inputs.
//
// Exit codes: 0 all checks passed, 1 violations found, 2 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "softnls/softnls.hpp"

namespace {

using namespace softnls;
using io::Json;

constexpr int kExitPass = 0;
constexpr int kExitViolations = 1;
constexpr int kExitInput = 2;

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  std::optional<double> tol;
  std::string p = "2";
  std::size_t horizon = 1000;
  double eps = 0.01;
  bool oracle = false;
  std::string format = "json";
  std::string out;
  // operator-norm effort
  std::string method = "multistart";
  double grid_resolution = 1e-3;
  unsigned starts = 16;
  unsigned iterations = 200;

  [[nodiscard]] double p_value() const { return p == "inf" ? kInf : std::stod(p); }

  [[nodiscard]] OpNormConfig opnorm() const {
    OpNormConfig c;
    c.method = method == "grid" ? OpNormMethod::grid : OpNormMethod::multistart;
    c.grid_resolution = grid_resolution;
    c.starts = starts;
    c.iterations = iterations;
    c.seed = seed;
    c.with_oracle = oracle;
    c.validate();
    return c;
  }
};

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw InputError("'" + path + "' is not valid JSON: " + ex.what());
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Collects output lines in one format and flushes them at the end.
class Output {
 public:
  explicit Output(const RunConfig& cfg) : text_(cfg.format == "text") {}

  void report(const VerificationReport& r) {
    if (!text_) return line(io::to_json(r).dump());
    std::ostringstream os;
    os << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << "  violations=" << r.violations << "/" << r.samples
       << "  max_violation=" << fmt(r.max_violation) << "  tol=" << fmt(r.tolerance) << "  seed=" << r.seed;
    for (const auto& c : r.counterexamples) {
      os << "\n  " << c.check << " #" << c.index << " excess=" << fmt(c.excess);
      if (c.scalar) os << " r=" << fmt(*c.scalar);
    }
    line(os.str());
  }

  void opnorm(std::size_t i, const OpNormResult& r) {
    if (!text_) return line(io::to_json(r).dump());
    std::ostringstream os;
    os << "opnorm[" << i << "]: value=" << fmt(r.value) << "  method=" << to_string(r.method)
       << "  iterations=" << r.iterations;
    if (r.certificate_gap) os << "  certificate_gap=" << fmt(*r.certificate_gap);
    os << "  maximizer=" << io::to_json(r.maximizer).dump();
    line(os.str());
  }

  void independence(const IndependenceReport& r) {
    if (!text_) return line(io::to_json(r).dump());
    std::ostringstream os;
    os << (r.independent ? "independent" : "dependent") << "  rank=" << r.rank << "  singular_values=[";
    for (std::size_t i = 0; i < r.singular_values.size(); ++i) os << (i ? ", " : "") << fmt(r.singular_values[i]);
    os << "]";
    line(os.str());
  }

  void sequence(const std::string& kind, const HorizonVerdict& conv, const HorizonVerdict& cauchy,
                const VerificationReport& implication) {
    if (!text_) {
      Json j = {{"kind", kind},
                {"convergence", io::to_json(conv, "CONVERGED_AT")},
                {"cauchy", io::to_json(cauchy, "CAUCHY_AT")},
                {"implication", io::to_json(implication)}};
      return line(j.dump());
    }
    auto verdict = [](const HorizonVerdict& v, const char* name) {
      return v.reached() ? std::string(name) + " " + std::to_string(*v.index) : std::string("NOT_WITHIN_HORIZON");
    };
    line(kind + ": convergence " + verdict(conv, "CONVERGED_AT") + ", cauchy " + verdict(cauchy, "CAUCHY_AT") +
         " (horizon " + std::to_string(conv.horizon) + ")");
    report(implication);
  }

  int flush(const std::string& path) const {
    if (path.empty()) {
      std::cout << buf_;
      std::cout.flush();
      return kExitPass;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << buf_)) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitInput;
    }
    return kExitPass;
  }

 private:
  void line(const std::string& s) { buf_ += s + "\n"; }

  bool text_;
  std::string buf_;
};

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string norm;
  std::string metric;
  std::string operators;
  std::string suite = "all";
  std::size_t dim = 2;
};

std::vector<VerificationReport> verify_norm(const VerifyArgs& a, const RunConfig& cfg) {
  const Sampler sampler(a.dim, cfg.seed);
  const auto norm = make_named_norm(a.norm, a.dim, cfg.p_value());
  return {verify_norm_axioms(norm, sampler, cfg.samples, cfg.tol.value_or(1e-9))};
}

std::vector<VerificationReport> verify_metric(const VerifyArgs& a, const RunConfig& cfg) {
  const Sampler sampler(a.dim, cfg.seed);
  const auto metric = make_named_metric(a.metric, a.dim, cfg.p_value());
  const double tol = cfg.tol.value_or(1e-9);
  return {verify_metric_axioms(metric, sampler, cfg.samples, tol),
          verify_metric_norm_compatibility(metric, sampler, cfg.samples, tol)};
}

std::vector<VerificationReport> verify_operators(const VerifyArgs& a, const RunConfig& cfg) {
  const auto ops = io::operators_from_json(read_json(a.operators));
  const double p = cfg.p_value();
  const double tol = cfg.tol.value_or(1e-6);
  const auto ocfg = cfg.opnorm();
  const CanonicalSoftNorm canon(p);
  auto wants = [&](const char* s) { return a.suite == "all" || a.suite == s; };
  std::vector<VerificationReport> out;

  if (wants("opnorm-axioms")) {
    OpNormAxiomParams params;
    params.tol = tol;
    out.push_back(verify_opnorm_axioms(ops, p, ocfg, params));
  }
  if (wants("submultiplicative")) {
    VerificationReport rep("submultiplicative", tol, cfg.seed);
    for (const auto& s : ops) {
      for (const auto& t : ops) {
        if (s.in_dim() == t.out_dim()) merge_into(rep, verify_submultiplicative(s, t, p, ocfg, tol));
      }
    }
    out.push_back(std::move(rep));
  }
  if (wants("power")) {
    VerificationReport rep("power_bound", tol, cfg.seed);
    for (const auto& t : ops) {
      if (t.is_square()) merge_into(rep, verify_power_bound(t, 5, p, ocfg, tol));
    }
    out.push_back(std::move(rep));
  }
  if (wants("bounded")) {
    VerificationReport rep("bounded", tol, cfg.seed);
    for (const auto& t : ops) {
      const auto nin = canon.bind(t.in_dim()), nout = canon.bind(t.out_dim());
      const double m = op_norm(t, nin, nout, ocfg).value;
      merge_into(rep, verify_bounded(t, m, nin, nout, Sampler(t.in_dim(), cfg.seed), cfg.samples, tol));
    }
    out.push_back(std::move(rep));
  }
  if (wants("ratio")) {
    VerificationReport rep("opnorm_ratio", tol, cfg.seed);
    for (const auto& t : ops) {
      const auto nin = canon.bind(t.in_dim()), nout = canon.bind(t.out_dim());
      const auto r = op_norm(t, nin, nout, ocfg);
      merge_into(rep, op_norm_ratio_check(t, nin, nout, r, Sampler(t.in_dim(), cfg.seed), cfg.samples, tol));
    }
    out.push_back(std::move(rep));
  }
  if (wants("continuity")) {
    VerificationReport rep("lipschitz_continuity", tol, cfg.seed);
    ContinuityParams params;
    params.eps = cfg.eps;
    params.horizon = cfg.horizon;
    params.opnorm = ocfg;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const auto& t = ops[i];
      const Sampler sampler(t.in_dim(), cfg.seed);
      auto g = sampler.stream("continuity", i);
      const auto base = sampler.gaussian(g);
      const auto dir = sampler.gaussian(g);
      const auto nin = canon.bind(t.in_dim()), nout = canon.bind(t.out_dim());
      for (const auto& seq : {harmonic_sequence(base, dir), geometric_sequence(base, dir, 0.5)}) {
        merge_into(rep, lipschitz_continuity_check(t, nin, nout, seq, tol, params));
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

int run_verify(const VerifyArgs& a, const RunConfig& cfg, Output& out) {
  const int subjects = !a.norm.empty() + !a.metric.empty() + !a.operators.empty();
  if (subjects != 1) throw InputError("verify needs exactly one of --norm, --metric, --operator");
  std::vector<VerificationReport> reports;
  if (!a.norm.empty()) reports = verify_norm(a, cfg);
  if (!a.metric.empty()) reports = verify_metric(a, cfg);
  if (!a.operators.empty()) reports = verify_operators(a, cfg);
  bool ok = true;
  for (const auto& r : reports) {
    out.report(r);
    ok = ok && r.passed();
  }
  return ok ? kExitPass : kExitViolations;
}

// ---------------------------------------------------------------------------
// opnorm, indep, sequence
// ---------------------------------------------------------------------------

int run_opnorm(const std::string& file, const RunConfig& cfg, Output& out) {
  const auto ops = io::operators_from_json(read_json(file));
  const auto ocfg = cfg.opnorm();
  const CanonicalSoftNorm canon(cfg.p_value());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& t = ops[i];
    out.opnorm(i, op_norm(t, canon.bind(t.in_dim()), canon.bind(t.out_dim()), ocfg));
  }
  return kExitPass;
}

int run_indep(const std::string& file, Output& out) {
  const auto vs = io::soft_vectors_from_json(read_json(file));
  out.independence(sv_independence(vs));
  return kExitPass;
}

int run_sequence(const std::string& file, const RunConfig& cfg, Output& out) {
  const auto spec = io::sequence_spec_from_json(read_json(file));
  const auto seq = make_sequence(spec);
  const auto norm = CanonicalSoftNorm(cfg.p_value()).bind(seq.dim());
  // Sequences without a declared limit are tested against their base.
  const SoftVector limit = seq.declared_limit().value_or(spec.base);
  const auto conv = seq_converges_to(seq, limit, norm, cfg.eps, cfg.horizon);
  const auto cauchy = seq_is_cauchy(seq, norm, cfg.eps, cfg.horizon);
  const auto implication = check_convergent_implies_cauchy(seq, limit, norm, cfg.eps, cfg.horizon);
  out.sequence(spec.kind, conv, cauchy, implication);
  return implication.passed() ? kExitPass : kExitViolations;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  sub->add_option("--samples", cfg.samples, "samples per suite")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--tol", cfg.tol, "tolerance (default 1e-9 for norms and metrics, 1e-6 for operators)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--p", cfg.p, "base-norm exponent")->capture_default_str()->check(CLI::IsMember({"1", "2", "inf"}));
  sub->add_option("--horizon", cfg.horizon, "sequence horizon")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--eps", cfg.eps, "sequence epsilon")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_flag("--oracle", cfg.oracle, "also run the grid oracle (lifted dimension <= 3)");
  sub->add_option("--format", cfg.format, "output format")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--method", cfg.method, "operator-norm method")
      ->capture_default_str()
      ->check(CLI::IsMember({"multistart", "grid"}));
  sub->add_option("--grid-resolution", cfg.grid_resolution, "grid angular step")->capture_default_str();
  sub->add_option("--starts", cfg.starts, "multistart starts")->capture_default_str();
  sub->add_option("--iterations", cfg.iterations, "iterations per start")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites and operator-norm estimates for soft normed spaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run norm, metric or operator suites");
  verify->add_option("--norm", va.norm, "norm to verify")->check(CLI::IsMember({"canonical", "no-abs", "squared"}));
  verify->add_option("--metric", va.metric, "metric to verify")
      ->check(CLI::IsMember({"induced", "bounded", "discrete", "squared", "param-diff"}));
  verify->add_option("--operator", va.operators, "operator JSON file (object or array)");
  verify->add_option("--suite", va.suite, "operator suite")
      ->capture_default_str()
      ->check(CLI::IsMember({"opnorm-axioms", "submultiplicative", "power", "bounded", "ratio", "continuity", "all"}));
  verify->add_option("--dim", va.dim, "vector dimension for norm and metric suites")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_common(verify, cfg);

  std::string file;
  auto* opnorm = app.add_subcommand("opnorm", "estimate operator norms");
  opnorm->add_option("file", file, "operator JSON file")->required();
  add_common(opnorm, cfg);

  auto* indep = app.add_subcommand("indep", "test independence of soft vectors");
  indep->add_option("file", file, "JSON array of soft vectors")->required();
  add_common(indep, cfg);

  auto* sequence = app.add_subcommand("sequence", "convergence and Cauchy verdicts for a sequence spec");
  sequence->add_option("file", file, "sequence spec JSON file")->required();
  add_common(sequence, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    Output out(cfg);
    int code = kExitPass;
    if (*verify) code = run_verify(va, cfg, out);
    if (*opnorm) code = run_opnorm(file, cfg, out);
    if (*indep) code = run_indep(file, out);
    if (*sequence) code = run_sequence(file, cfg, out);
    const int written = out.flush(cfg.out);
    return written == kExitPass ? code : written;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInput;
  }
}
