// trisel: generate instances, run the selection pipeline, run the exact
// depth oracle, benchmark, and verify certificates.

#include "trisel/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"constructive triangle-selection pipeline with checkable certificates"};
  app.require_subcommand(1);

  trisel::GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a seeded instance file");
  gen_cmd->add_option("--family", gen.family,
                      "uniform_grid_perturbed | random_integer | convex_position | two_clusters");
  gen_cmd->add_option("--n", gen.n, "number of points")->required();
  gen_cmd->add_option("--m", gen.m, "triangle count or ALL");
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--out", gen.out, "output instance path (default: stdout)");

  trisel::SelectOptions select;
  CLI::App* select_cmd = app.add_subcommand("select", "run the selection pipeline");
  select_cmd->add_option("--in", select.in, "instance path")->required();
  select_cmd->add_option("--cert-out", select.cert_out, "certificate output path");
  select_cmd->add_flag("--json", select.json, "machine-readable summary");

  trisel::OracleOptions oracle;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact maximum depth");
  oracle_cmd->add_option("--in", oracle.in, "instance path")->required();
  oracle_cmd->add_flag("--json", oracle.json, "machine-readable output");

  trisel::BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark across families and sizes");
  bench_cmd->add_option("--families", bench.families, "comma-separated family list");
  bench_cmd->add_option("--n-range", bench.n_range, "point count range lo..hi")->required();
  bench_cmd->add_option("--trials", bench.trials, "trials per (family, n)");
  bench_cmd->add_option("--seed", bench.seed, "base seed; row seeds increment from it");
  bench_cmd->add_option("--csv-out", bench.csv_out, "CSV output path (default: stdout)");
  bench_cmd->add_option("--m", bench.m, "ALL | n2 | fixed triangle count");
  bench_cmd->add_option("--oracle-max-n", bench.oracle_max_n,
                        "run the exact oracle only for n up to this bound");

  trisel::VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a certificate against an instance");
  verify_cmd->add_option("--in", verify.in, "instance path")->required();
  verify_cmd->add_option("--cert", verify.cert, "certificate path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return trisel::kExitInput;
  }

  if (gen_cmd->parsed()) return trisel::cmd_gen(gen, std::cout, std::cerr);
  if (select_cmd->parsed()) return trisel::cmd_select(select, std::cout, std::cerr);
  if (oracle_cmd->parsed()) return trisel::cmd_oracle(oracle, std::cout, std::cerr);
  if (bench_cmd->parsed()) return trisel::cmd_bench(bench, std::cout, std::cerr);
  if (verify_cmd->parsed()) return trisel::cmd_verify(verify, std::cout, std::cerr);
  return trisel::kExitInput;
}
