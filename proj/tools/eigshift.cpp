#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eigshift/cli.hpp"

namespace {

using eigshift::Error;
using namespace eigshift::cli;

int finish(const Outcome& out, const std::optional<std::string>& path) {
  eigshift::io::write_output(out.report, path);
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact eigenvalue shifts of Jordan blocks, with structure prediction and verification"};
  app.require_subcommand(1);
  std::string backend_name = "exact";
  std::uint64_t seed = 1;
  app.add_option("--backend", backend_name, "exact or float (float rejects classify)")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", seed, "seed for randomized subcommands");

  std::string job_path, matrix_path, chains_path, form_path;
  std::optional<std::string> out_path;
  std::size_t count = 50;

  auto* shift = app.add_subcommand("shift", "shift an eigenvalue and check the predicted structure");
  shift->add_option("job", job_path, "job file")->required();
  shift->add_option("-o,--output", out_path, "report file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check biorthogonality and resolvent identities of chains");
  verify->add_option("matrix", matrix_path, "matrix file")->required();
  verify->add_option("chains", chains_path, "chains file")->required();
  verify->add_option("-o,--output", out_path, "report file (default stdout)");

  auto* classify = app.add_subcommand("classify", "case analysis of a canonical block");
  classify->add_option("form", form_path, "canonical form file")->required();
  classify->add_option("-o,--output", out_path, "report file (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "randomized shifts checked against the rank oracle");
  selftest->add_option("-n,--count", count, "number of instances");
  selftest->add_option("-o,--output", out_path, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_parse;
  }

  try {
    const auto backend = eigshift::io::backend_from_string(backend_name);
    const bool backend_given = app.count("--backend") > 0;
    if (*shift) {
      return finish(cmd_shift(eigshift::io::read_json_file(job_path),
                              backend_given ? std::optional(backend) : std::nullopt),
                    out_path);
    }
    if (*verify)
      return finish(cmd_verify(eigshift::io::read_json_file(matrix_path), eigshift::io::read_json_file(chains_path),
                               backend),
                    out_path);
    if (*classify) return finish(cmd_classify(eigshift::io::read_json_file(form_path), backend), out_path);
    if (*selftest) return finish(cmd_selftest(seed, count), out_path);
  } catch (const Error& e) {
    std::cerr << "eigshift: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "eigshift: internal error: " << e.what() << "\n";
    return exit_discrepancy;
  }
  return exit_ok;
}
