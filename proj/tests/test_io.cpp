#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "eigshift/cli.hpp"
#include "eigshift/io.hpp"
#include "helpers.hpp"

using namespace eigshift;
using namespace testing_helpers;
using io::Json;

#ifndef EIGSHIFT_JOBS_DIR
#define EIGSHIFT_JOBS_DIR "jobs"
#endif

namespace {

Json job(const std::string& name) { return io::read_json_file(std::string(EIGSHIFT_JOBS_DIR) + "/" + name); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

Json base_job() {
  return io::parse_json_text(R"({"source": {"segre": [{"eigenvalue": "1", "size": 4}]},
    "target_eigenvalue": "1", "new_eigenvalue": "2", "k": 2})");
}

}  // namespace

TEST(Json, ScalarsRoundTrip) {
  for (const char* s : {"0", "-3/4", "1/2+1i", "-2i", "7"}) {
    const Scalar x = Scalar::parse(s);
    EXPECT_EQ(io::scalar_from_json(io::scalar_to_json(x)), x);
  }
  EXPECT_EQ(io::scalar_from_json(Json(5)), q(5));
  EXPECT_EQ(kind_of([] { io::scalar_from_json(Json(0.5)); }), ErrorKind::parse);
}

TEST(Json, MatricesAndStructuresRoundTrip) {
  RandomSource rng(71);
  const Matrix m = rng.rational_matrix(3, 4, 3, 3);
  EXPECT_EQ(io::matrix_from_json(io::matrix_to_json(m)), m);
  EXPECT_EQ(kind_of([] { io::matrix_from_json(io::parse_json_text(R"([["1","2"],["3"]])")); }), ErrorKind::parse);
  const SegreCharacteristic s = segre({{q(3), 1}, {q(1), 2}, {q(1), 4}});
  EXPECT_EQ(io::segre_from_json(io::segre_to_json(s)), s.canonical());
  const ChainPair c{q(2), {e(2, 2), e(2, 1)}, {e(2, 1), e(2, 2)}};
  const ChainPair back = io::chain_from_json(io::chain_to_json(c));
  EXPECT_EQ(back.lambda, c.lambda);
  EXPECT_EQ(back.left, c.left);
  EXPECT_EQ(back.right, c.right);
}

TEST(Json, JobParseErrors) {
  EXPECT_EQ(kind_of([] { io::parse_json_text("{ nope"); }), ErrorKind::parse);
  for (const char* drop : {"source", "target_eigenvalue", "new_eigenvalue", "k"}) {
    Json j = base_job();
    j.erase(drop);
    EXPECT_EQ(kind_of([&] { io::job_from_json(j); }), ErrorKind::parse) << drop;
  }
  Json j = base_job();
  j["backend"] = "quantum";
  EXPECT_EQ(kind_of([&] { io::job_from_json(j); }), ErrorKind::parse);
  j = base_job();
  j["k"] = -1;
  EXPECT_EQ(kind_of([&] { io::job_from_json(j); }), ErrorKind::parse);
  j = base_job();
  j["source"] = Json::object();
  EXPECT_EQ(kind_of([&] { io::job_from_json(j); }), ErrorKind::parse);
}

TEST(Json, NormalizedJobsRoundTrip) {
  for (const char* name : {"two_blocks_minimal.json", "two_blocks_split.json", "odd_explicit.json", "counterexample_j4.json"}) {
    const Json normalized = io::job_to_json(io::job_from_json(job(name)));
    EXPECT_EQ(io::job_to_json(io::job_from_json(normalized)), normalized) << name;
  }
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(cli::exit_code_for(ErrorKind::parse), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::precondition), 3);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::unsupported_backend), 3);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::classification_bug), 4);
  EXPECT_EQ(cli::exit_code_for(ErrorKind::internal), 4);
}

TEST(Shift, GoldenReports) {
  const auto a = cli::cmd_shift(job("two_blocks_minimal.json"));
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.report.at("case_label"), "Even3");
  EXPECT_EQ(a.report.at("predicted_segre"), io::segre_to_json(segre({{q(2), 4}, {q(3), 2}})));
  for (const char* v : {"spectrum_check", "half_chain_invariance", "classification_check", "closed_form_check", "cycle_check"})
    EXPECT_EQ(a.report.at(v), "pass") << v;

  const auto b = cli::cmd_shift(job("two_blocks_split.json"));
  EXPECT_EQ(b.exit_code, 0);
  EXPECT_EQ(b.report.at("case_label"), "Even1");
  EXPECT_EQ(b.report.at("oracle_segre"), io::segre_to_json(segre({{q(2), 2}, {q(2), 2}, {q(3), 2}})));
}

TEST(Shift, ReportsAreDeterministic) {
  const std::string one = cli::cmd_shift(job("two_blocks_split.json")).report.dump(2);
  const std::string two = cli::cmd_shift(job("two_blocks_split.json")).report.dump(2);
  EXPECT_EQ(one, two);
  const auto first = cli::cmd_shift(job("two_blocks_split.json"));
  const auto again = cli::cmd_shift(first.report.at("job"));
  EXPECT_EQ(first.report.dump(), again.report.dump());
}

TEST(Shift, ClosedFormMissIsADiscrepancy) {
  const auto o = cli::cmd_shift(job("counterexample_j4.json"));
  EXPECT_EQ(o.exit_code, 4);
  EXPECT_EQ(o.report.at("classification_check"), "pass");
  EXPECT_EQ(o.report.at("closed_form_check"), "fail");
  EXPECT_EQ(o.report.at("cycle_source"), "rank-fallback");
  EXPECT_FALSE(o.report.at("discrepancy_diagnostics").empty());
}

TEST(Shift, Preconditions) {
  Json bad = base_job();
  bad["k"] = 1;
  EXPECT_EQ(kind_of([&] { cli::cmd_shift(bad); }), ErrorKind::precondition);
  Json two = base_job();
  two["source"]["segre"].push_back(Json{{"eigenvalue", "1"}, {"size", 1}});
  EXPECT_EQ(cli::exit_code_for(kind_of([&] { cli::cmd_shift(two); })), 3);
}

TEST(Shift, FloatBackend) {
  const auto o = cli::cmd_shift(job("two_blocks_minimal.json"), io::Backend::floating);
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report.at("half_chain_invariance"), "pass");
  EXPECT_EQ(o.report.at("classification_check"), "not-applicable");
  EXPECT_EQ(o.report.at("job").at("backend"), "float");
}

TEST(Classify, Forms) {
  const auto z = cli::cmd_classify(job("even_zero.json"));
  EXPECT_EQ(z.exit_code, 0);
  EXPECT_EQ(z.report.at("case_label"), "Even1");
  const auto c = cli::cmd_classify(job("even_corner.json"));
  EXPECT_EQ(c.report.at("case_label"), "Even3");
  const auto o = cli::cmd_classify(job("odd_zero.json"));
  EXPECT_EQ(o.report.at("case_label"), "Odd4c");
  EXPECT_EQ(o.report.at("eigenspace_check"), "pass");
  EXPECT_EQ(kind_of([&] { cli::cmd_classify(job("even_zero.json"), io::Backend::floating); }),
            ErrorKind::unsupported_backend);
}

TEST(Verify, CleanAndCorruptedChains) {
  const auto ok = cli::cmd_verify(job("j4_matrix.json"), job("j4_chains.json"));
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.report.at("summary").at("fail"), 0);
  const auto bad = cli::cmd_verify(job("j4_matrix.json"), job("j4_chains_corrupted.json"));
  EXPECT_EQ(bad.exit_code, 4);
  EXPECT_GT(bad.report.at("summary").at("fail").get<int>(), 0);
  const auto fl = cli::cmd_verify(job("j4_matrix.json"), job("j4_chains.json"), io::Backend::floating);
  EXPECT_EQ(fl.exit_code, 0);
}

TEST(Selftest, SmallRun) {
  const auto o = cli::cmd_selftest(5, 15);
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report.at("oracle_mismatches"), 0);
  EXPECT_EQ(o.report.at("errors"), 0);
}
