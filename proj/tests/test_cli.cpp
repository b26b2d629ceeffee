#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "softnls/json_io.hpp"

using softnls::io::Json;

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with stdout captured; stderr is discarded.
Run run(const std::string& args) {
  const std::string cmd = std::string(SOFTNLS_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(SOFTNLS_SAMPLES) + "/" + name; }

std::vector<Json> lines(const std::string& s) {
  std::vector<Json> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(Json::parse(l));
  return out;
}

}  // namespace

TEST(Cli, VerifyCanonicalNormPasses) {
  const auto r = run("verify --norm canonical --p 2 --samples 20000");
  EXPECT_EQ(r.code, 0);
  const auto js = lines(r.out);
  ASSERT_EQ(js.size(), 1u);
  EXPECT_EQ(softnls::io::validate_report_json(js[0]), "");
  EXPECT_EQ(js[0]["suite"], "norm_axioms");
  EXPECT_EQ(js[0]["samples"], 20000);
  for (const char* p : {"1", "inf"}) EXPECT_EQ(run(std::string("verify --norm canonical --samples 2000 --p ") + p).code, 0);
}

TEST(Cli, NegativeControlsExitOne) {
  for (const char* args : {"verify --norm no-abs", "verify --norm squared", "verify --metric squared",
                           "verify --metric param-diff", "verify --metric bounded"}) {
    const auto r = run(std::string(args) + " --samples 2000");
    EXPECT_EQ(r.code, 1) << args;
    for (const auto& j : lines(r.out)) EXPECT_EQ(softnls::io::validate_report_json(j), "") << args;
  }
  const auto ok = run("verify --metric induced --samples 2000");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(lines(ok.out).size(), 2u);
}

TEST(Cli, OperatorSuites) {
  const auto r = run("verify --operator " + sample("operators.json") + " --suite submultiplicative");
  EXPECT_EQ(r.code, 0);
  ASSERT_EQ(lines(r.out).size(), 1u);
  const auto all = run("verify --operator " + sample("operators.json") + " --samples 1000");
  EXPECT_EQ(all.code, 0);
  const auto js = lines(all.out);
  ASSERT_EQ(js.size(), 6u);
  const char* suites[] = {"opnorm_axioms", "submultiplicative", "power_bound", "bounded", "opnorm_ratio",
                          "lipschitz_continuity"};
  for (std::size_t i = 0; i < js.size(); ++i) {
    EXPECT_EQ(js[i]["suite"], suites[i]);
    EXPECT_EQ(softnls::io::validate_report_json(js[i]), "");
  }
}

TEST(Cli, OpNormExamples) {
  const auto id = lines(run("opnorm " + sample("identity.json")).out);
  ASSERT_EQ(id.size(), 1u);
  EXPECT_NEAR(id[0]["value"].get<double>(), 1.0, 1e-9);
  EXPECT_TRUE(id[0]["certificate_gap"].is_null());
  EXPECT_EQ(lines(run("opnorm " + sample("zero.json")).out)[0]["value"], 0.0);

  const auto pr = lines(run("opnorm " + sample("projection.json") + " --oracle").out);
  EXPECT_NEAR(pr[0]["value"].get<double>(), 1.0, 1e-9);
  EXPECT_LE(pr[0]["certificate_gap"].get<double>(), 1e-3);
  EXPECT_EQ(pr[0]["maximizer"]["e"], 0.0);

  const auto many = run("opnorm " + sample("operators.json") + " --method grid --grid-resolution 0.01");
  EXPECT_EQ(many.code, 0);
  const auto js = lines(many.out);
  ASSERT_EQ(js.size(), 3u);
  EXPECT_EQ(js[0]["method"], "grid");
}

TEST(Cli, Independence) {
  const auto a = lines(run("indep " + sample("vectors_independent.json")).out);
  EXPECT_EQ(a[0]["verdict"], "independent");
  EXPECT_EQ(a[0]["rank"], 3);
  EXPECT_EQ(lines(run("indep " + sample("vectors_with_zero.json")).out)[0]["verdict"], "dependent");
}

TEST(Cli, Sequences) {
  const auto h = run("sequence " + sample("harmonic.json") + " --eps 0.01 --horizon 1000");
  EXPECT_EQ(h.code, 0);
  const auto j = lines(h.out)[0];
  EXPECT_EQ(j["convergence"]["verdict"], "CONVERGED_AT");
  EXPECT_LE(j["convergence"]["index"].get<int>(), 201);
  EXPECT_EQ(j["cauchy"]["verdict"], "CAUCHY_AT");
  EXPECT_LE(j["cauchy"]["index"].get<int>(), 201);
  EXPECT_EQ(j["implication"]["violations"], 0);

  const auto alt = lines(run("sequence " + sample("alternating.json")).out)[0];
  EXPECT_EQ(alt["convergence"]["verdict"], "NOT_WITHIN_HORIZON");
  EXPECT_EQ(alt["cauchy"]["verdict"], "NOT_WITHIN_HORIZON");
  EXPECT_EQ(alt["implication"]["violations"], 0);

  const auto c = lines(run("sequence " + sample("constant.json")).out)[0];
  EXPECT_EQ(c["convergence"]["index"], 1);
  EXPECT_EQ(c["cauchy"]["index"], 1);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run("opnorm " + sample("malformed.json")).code, 2);
  EXPECT_EQ(run("verify --operator " + sample("malformed.json")).code, 2);
  EXPECT_EQ(run("opnorm /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("verify --norm canonical --metric induced").code, 2);
  EXPECT_EQ(run("verify --norm bogus").code, 2);
  EXPECT_EQ(run("verify --norm canonical --p 3").code, 2);
  EXPECT_EQ(run("verify --norm canonical --samples 0").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("indep " + sample("harmonic.json")).code, 2);
  EXPECT_EQ(run("sequence " + sample("identity.json")).code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, DeterministicAndSeedSensitive) {
  const std::vector<std::string> commands{
      "verify --norm squared --samples 3000", "verify --operator " + sample("operators.json") + " --samples 500",
      "opnorm " + sample("operators.json"), "sequence " + sample("geometric.json"),
      "indep " + sample("vectors_independent.json")};
  for (const auto& args : commands) {
    const auto a = run(args + " --seed 7"), b = run(args + " --seed 7");
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(a.code, b.code) << args;
    EXPECT_FALSE(a.out.empty());
  }
  EXPECT_NE(run("verify --norm squared --seed 1").out, run("verify --norm squared --seed 2").out);
}

TEST(Cli, OutFileAndTextFormat) {
  const auto path = std::filesystem::temp_directory_path() / "softnls_cli_test_out.json";
  const auto r = run("verify --norm canonical --samples 500 --out " + path.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run("verify --norm canonical --samples 500").out);
  std::filesystem::remove(path);

  const auto t = run("verify --norm squared --samples 500 --format text");
  EXPECT_EQ(t.code, 1);
  EXPECT_EQ(t.out.rfind("norm_axioms: FAIL", 0), 0u);
  EXPECT_EQ(run("verify --norm canonical --out /nonexistent/dir/x.json").code, 2);
}
