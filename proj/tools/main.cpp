#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

using namespace heuberger;

namespace {

void add_common(CLI::App* cmd, cli::Options& opts) {
  cmd->add_option("--cap", opts.cap, "Vertex cap for materialized graphs")->check(CLI::PositiveNumber);
  cmd->add_option("--budget", opts.budget, "Solver budget in search nodes")->check(CLI::PositiveNumber);
  cmd->add_flag("--json", opts.json, "Emit a JSON report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chromatic bounds for abelian Cayley graphs given by Heuberger matrices"};
  app.require_subcommand(1);
  cli::Options opts;
  std::string path, direction, dir;
  std::vector<std::string> payload;
  std::size_t n = 0;
  std::string delete_which = "last";

  auto* analyze = app.add_subcommand("analyze", "Lemma bounds with certificates, then the oracle if needed");
  analyze->add_option("file", path, "Matrix file ('-' for stdin)")->required();
  analyze->add_option("--radius", opts.radius, "Ball radius for infinite graphs");
  analyze->add_option("--sign-limit", opts.sign_search_limit, "Largest dimension for the exhaustive sign search");
  add_common(analyze, opts);

  auto* chi = app.add_subcommand("chi", "Oracle chromatic number only");
  chi->add_option("file", path, "Matrix file ('-' for stdin)")->required();
  chi->add_option("--radius", opts.radius, "Ball radius for infinite graphs");
  chi->add_option("--edges", opts.edges_path, "Write the materialized graph as an edge list");
  add_common(chi, opts);

  auto* convert = app.add_subcommand("convert", "Convert between matrices and circulant or distance descriptions");
  convert->add_option("direction", direction,
                      "distance-to-matrix | matrix-to-distance | circulant-to-matrix | matrix-to-circulant")
      ->required();
  convert->add_option("args", payload, "Integers, or a matrix file");
  convert->add_option("--delete", delete_which, "Column deleted by matrix-to-circulant")
      ->check(CLI::IsMember({"first", "last"}));
  convert->add_flag("--json", opts.json, "Emit a JSON report");

  auto* payan = app.add_subcommand("payan", "Check that no cube-like graph on Z_2^n has chromatic number 3");
  payan->add_option("--n,n", n, "Dimension n")->required()->check(CLI::Range(1, 6));
  payan->add_option("--sample", opts.samples, "Check this many random generating sets instead of all");
  payan->add_option("--seed", opts.seed, "Seed for --sample");
  add_common(payan, opts);

  auto* qnd = app.add_subcommand("qnd", "The cube with diagonals Q_n^d and its analysis");
  qnd->add_option("n", n, "Dimension n")->required()->check(CLI::PositiveNumber);
  add_common(qnd, opts);

  auto* batch = app.add_subcommand("batch", "Analyze every matrix file in a directory");
  batch->add_option("dir", dir, "Directory of matrix files")->required();
  batch->add_option("--radius", opts.radius, "Ball radius for infinite graphs");
  add_common(batch, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : heuberger::cli::kParseError;
  }
  opts.del = delete_which == "first" ? DeleteColumn::First : DeleteColumn::Last;

  try {
    if (*analyze) return cli::cmd_analyze(path, opts, std::cout, std::cerr);
    if (*chi) return cli::cmd_chi(path, opts, std::cout, std::cerr);
    if (*convert) return cli::cmd_convert(direction, payload, opts, std::cout, std::cerr);
    if (*payan) return cli::cmd_payan(n, opts, std::cout, std::cerr);
    if (*qnd) return cli::cmd_qnd(n, opts, std::cout, std::cerr);
    if (*batch) return cli::cmd_batch(dir, opts, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
