#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "heuberger/homomorphism.hpp"
#include "heuberger/oracle.hpp"
#include "heuberger/payan.hpp"

namespace heuberger::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kCapExceeded = 3,
  kInapplicable = 4,
  kBatchErrors = 5,
};

struct Options {
  std::optional<std::size_t> radius;
  std::size_t cap = kDefaultVertexCap;
  std::uint64_t budget = kDefaultSolverBudget;
  bool json = false;
  std::uint64_t seed = 0;
  DeleteColumn del = DeleteColumn::Last;
  std::size_t sign_search_limit = kDefaultSignSearchLimit;
  std::optional<std::size_t> samples;
  std::optional<std::string> edges_path;
};

/// Sum of absolute entries of the column with the largest such sum.
std::size_t default_radius(const HeubergerMatrix& m);

struct OracleRun {
  bool finite = false;
  std::size_t radius = 0;
  std::size_t vertices = 0;
  ChromaticResult result;
};

struct Analysis {
  HeubergerMatrix matrix;
  std::optional<ChiReport> report;
  BipartiteResult bipartite;
  std::optional<OracleRun> oracle;
  bool cap_exceeded = false;
  std::string cap_message;
  bool loops = false;
  std::optional<int> lower;
  std::optional<int> upper;
  bool exact = false;
};

/// Lemma pipeline (unless `oracle_only`), then the oracle when the lemmas do
/// not settle the value: the whole quotient when finite, a ball otherwise.
Analysis analyze_matrix(const HeubergerMatrix& m, const Options& opts, bool oracle_only = false);

void render_analysis(std::ostream& out, const Analysis& a);
std::string analysis_json(const Analysis& a);

int cmd_analyze(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_chi(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_convert(const std::string& direction, const std::vector<std::string>& args, const Options& opts,
                std::ostream& out, std::ostream& err);
int cmd_payan(std::size_t n, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_qnd(std::size_t n, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_batch(const std::string& dir, const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace heuberger::cli
