#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "heuberger/sacg.hpp"

namespace heuberger {

// ---------------------------------------------------------------------------
// Homomorphism steps between Heuberger matrices. Each step is a graph
// homomorphism source -> target (or, for zero-row deletion and block
// extraction, a chromatic-number-preserving reduction), so a chain ending at a
// graph with known chromatic number bounds the chromatic number of its start.

/// Source column `col` equals factor * (target column `col`). Map: e_j -> e_j.
struct ColumnReduce {
  std::size_t col = 0;
  Integer factor;
};
/// Target's top row is the sum of the source's top two rows.
/// Map: e_1, e_2 -> e_1 and e_j -> e_{j-1} for j >= 3.
struct CollapseTopRows {};
/// Map: e_j -> e_j.
struct AppendColumn {
  Vector column;
};
/// Map: e_j -> e_j into one more dimension.
struct AppendZeroRow {};
/// An explicit generator assignment into a given target matrix.
struct GeneratorMap {
  GeneratorImages images;
  HeubergerMatrix target;
};

using StepKind = std::variant<ColumnReduce, CollapseTopRows, AppendColumn, AppendZeroRow, StructuralOp, GeneratorMap>;

std::string step_name(const StepKind& kind);

struct HomStep {
  StepKind kind;
  HeubergerMatrix source;
  HeubergerMatrix target;
  /// tau(e_i) for each source generator; absent for reductions that are not
  /// realized by a generator map.
  std::optional<GeneratorImages> images;
};

/// Target matrix of the step; throws DomainError when the step does not apply.
HeubergerMatrix apply_step(const HeubergerMatrix& m, const StepKind& kind);

/// The generator map of the step applied to `m`, if it has one.
std::optional<GeneratorImages> step_images(const HeubergerMatrix& m, const StepKind& kind);

HomStep make_step(const HeubergerMatrix& source, StepKind kind);

/// Ordered steps starting at `start`; target of step i is the source of step i+1.
struct HomChain {
  HeubergerMatrix start;
  std::vector<HomStep> steps;

  explicit HomChain(HeubergerMatrix s = {}) : start(std::move(s)) {}
  const HeubergerMatrix& target() const { return steps.empty() ? start : steps.back().target; }
  HomChain& then(StepKind kind);
  bool empty() const { return steps.empty(); }
};

/// True iff every image is ±e_k with k in range and, for every column y of
/// `src`, sum_i y_i tau(e_i) lies in the column lattice of `dst`.
/// Throws DomainError when an image index is out of range or the image count
/// differs from the dimension of `src`.
bool validate_generator_map(const HeubergerMatrix& src, const HeubergerMatrix& dst, const GeneratorImages& images);

/// Mechanical re-verification: steps compose, each target is recomputed from
/// its source, and every generator map passes validate_generator_map.
bool chain_is_sound(const HomChain& chain);

// ---------------------------------------------------------------------------
// Bounds from the lemmas

struct BipartiteResult {
  bool bipartite = false;
  /// Index of an odd-sum column: walking its entries along the generators is
  /// an odd closed walk.
  std::optional<std::size_t> odd_column;
  Vector column_sums;
};

BipartiteResult bipartite_test(const HeubergerMatrix& m);

/// A chain from a matrix to the 1 x 1 matrix (e): a cycle for |e| >= 3, a
/// single edge for |e| = 2, the infinite path for e = 0.
struct CycleCertificate {
  int bound = 0;
  Integer cycle;  // e
  HomChain chain;
};

/// Chromatic number of the graph of (e): 2 for e = 0 or even, 3 for odd
/// |e| >= 3, nullopt for |e| = 1 (a loop).
std::optional<int> cycle_chromatic_number(const Integer& e);

/// Collapse all rows, reduce every column to e = gcd of the column sums, and
/// drop the redundant copies. Requires some nonzero column sum and e > 1.
std::optional<CycleCertificate> gcd3_bound(const HeubergerMatrix& m);

struct SignSearchResult {
  CycleCertificate certificate;
  std::vector<int> signs;  // epsilon_i in {+1, -1}, first entry +1
};

/// Largest dimension searched exhaustively by default.
inline constexpr std::size_t kDefaultSignSearchLimit = 16;

/// Signed row collapses: for each epsilon, the 1 x r matrix of epsilon . y_j
/// has gcd g; g = 0 or even certifies 2, odd g >= 3 certifies 3. Exhaustive
/// when m <= limit (first sign fixed), otherwise all-ones and alternating
/// only. Returns the best bound, earliest pattern in lexicographic order with
/// + before -.
std::optional<SignSearchResult> sign_search_bound(const HeubergerMatrix& m,
                                                  std::size_t limit = kDefaultSignSearchLimit);

enum class TomatoVerdict { Loops, Two, Three };

struct TomatoCageResult {
  TomatoVerdict verdict = TomatoVerdict::Loops;
  Integer abs_sum;  // s = sum |y_i|
  /// Row negations to absolute values, then collapse of all rows to (s).
  std::optional<HomChain> chain;
};

/// Chromatic number of a rank-1 graph. Throws DomainError unless m has one column.
TomatoCageResult tomato_cage(const HeubergerMatrix& m);

// ---------------------------------------------------------------------------
// Pipeline

struct BoundCertificate {
  int value = 0;
  std::string rule;
  /// Upper bounds: one chain per block, each ending at a graph with known χ.
  std::vector<HomChain> chains;
  /// Lower bound 3: a column whose entries give an odd closed walk.
  std::optional<Vector> odd_walk;
};

struct ChiReport {
  bool loops = false;
  std::optional<std::size_t> loop_generator;
  std::vector<StructuralStep> reductions;
  std::optional<BoundCertificate> lower;
  std::optional<BoundCertificate> upper;
  bool exact = false;
};

struct PipelineOptions {
  std::size_t sign_search_limit = kDefaultSignSearchLimit;
};

/// Loops, zero-row deletion, block split (χ is the max over blocks), rank 0,
/// rank 1, bipartite, then gcd and sign-search bounds.
ChiReport chi_upper_pipeline(const SACGraph& g, const PipelineOptions& options = {});

// ---------------------------------------------------------------------------
// Minimal-polynomial band matrices

/// (d + cols) x cols matrix whose column j carries c_0..c_d from row j down.
HeubergerMatrix minpoly_band_matrix(const std::vector<Integer>& coeffs, std::size_t cols);

Integer evaluate_polynomial(const std::vector<Integer>& coeffs, const Integer& x);

/// |p(1)| != 1 or |p(-1)| != 1.
bool minpoly_three_colorable(const std::vector<Integer>& coeffs);

}  // namespace heuberger
