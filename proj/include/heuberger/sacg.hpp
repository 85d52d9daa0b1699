#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "heuberger/lattice.hpp"
#include "heuberger/matrix.hpp"

namespace heuberger {

// ---------------------------------------------------------------------------
// Group specifications

/// Cay(Z_n, {±a_1, ..., ±a_r}).
struct Circulant {
  Integer n;
  std::vector<Integer> connections;
};

/// Cay(Z, {±a_1, ..., ±a_k}).
struct DistanceSet {
  std::vector<Integer> distances;
};

/// Cay(Z_2^n, S) with S given as bit tuples of length n.
struct CubeLike {
  std::size_t n = 0;
  std::vector<std::vector<int>> generators;

  /// Bit i of each mask is coordinate i of the tuple.
  static CubeLike from_masks(std::size_t n, const std::vector<std::uint64_t>& masks);
};

/// Z^k / span(relations) with generators the columns of generator_images.
struct Quotient {
  IntMatrix relations;         // k x s
  IntMatrix generator_images;  // k x m
};

using GroupSpec = std::variant<Circulant, DistanceSet, CubeLike, Quotient>;

/// The generators do not generate the group. `index` is the subgroup index,
/// or 0 when it is infinite.
class GenerationError : public DomainError {
 public:
  GenerationError(const std::string& what, Integer index) : DomainError(what), index_(std::move(index)) {}
  const Integer& index() const { return index_; }

 private:
  Integer index_;
};

// ---------------------------------------------------------------------------
// Standardized abelian Cayley graphs

/// An m x r integer matrix whose columns generate the relation lattice.
using HeubergerMatrix = IntMatrix;

inline std::size_t dimension(const HeubergerMatrix& m) { return m.rows(); }
inline std::size_t rank(const HeubergerMatrix& m) { return m.cols(); }

/// Cay(Z^m / H, {H ± e_1, ..., H ± e_m}) where H is the column span of `matrix`.
class SACGraph {
 public:
  explicit SACGraph(HeubergerMatrix matrix, std::optional<GroupSpec> provenance = std::nullopt);

  const HeubergerMatrix& matrix() const { return matrix_; }
  const std::optional<GroupSpec>& provenance() const { return provenance_; }
  std::size_t dimension() const { return matrix_.rows(); }
  std::size_t rank() const { return matrix_.cols(); }

 private:
  HeubergerMatrix matrix_;
  std::optional<GroupSpec> provenance_;
};

SACGraph from_group_spec(const GroupSpec& spec);

/// Validated generator data for a spec: generator images (k x m, deduplicated
/// as ± pairs) and relations (k x s).
Quotient standardize(const GroupSpec& spec);

// ---------------------------------------------------------------------------
// Conversions between matrices and circulant / distance descriptions

/// Heuberger matrix of Cay(Z, {±a_i}); requires positive entries with gcd 1.
HeubergerMatrix distance_to_matrix(const std::vector<Integer>& distances);

/// Heuberger matrix of C_n(a_1, ..., a_r); requires gcd(a_1, ..., a_r, n) = 1.
HeubergerMatrix circulant_to_matrix(const Integer& n, const std::vector<Integer>& connections);

struct DistanceCheck {
  Vector cross;          // the generalized cross product v
  Integer gcd;           // gcd(v)
  std::optional<std::vector<Integer>> distances;  // |v_i| when v != 0 and gcd(v) = 1
  std::string failure;   // human-readable failed condition, empty on success
};

/// Examines an (r+1) x r matrix for isomorphism to an integer distance graph.
DistanceCheck check_distance(const HeubergerMatrix& m);
std::optional<std::vector<Integer>> matrix_to_distance(const HeubergerMatrix& m);

enum class DeleteColumn { First, Last };

struct CirculantDescription {
  Integer n;
  std::vector<Integer> connections;
  friend bool operator==(const CirculantDescription&, const CirculantDescription&) = default;
};

struct CirculantCheck {
  Integer det;
  Vector cross;
  Integer gcd;
  std::optional<CirculantDescription> circulant;
  std::string failure;
};

/// Examines an r x r matrix for isomorphism to a circulant graph.
CirculantCheck check_circulant(const HeubergerMatrix& m, DeleteColumn which);
std::optional<CirculantDescription> matrix_to_circulant(const HeubergerMatrix& m, DeleteColumn which);

// ---------------------------------------------------------------------------
// Structural (isomorphism-level) operations

/// ±e_index in the target coordinate system.
struct SignedIndex {
  std::size_t index = 0;
  int sign = 1;
  friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
};

/// tau(e_i) for every source basis vector e_i.
using GeneratorImages = std::vector<SignedIndex>;

GeneratorImages identity_images(std::size_t m);

/// New column k is old column order[k].
struct PermuteColumns {
  std::vector<std::size_t> order;
};
struct NegateColumn {
  std::size_t col = 0;
};
/// col[target] += factor * col[source]
struct AddColumnMultiple {
  std::size_t target = 0;
  std::size_t source = 0;
  Integer factor;
};
/// `witness` expresses the deleted column over the remaining ones, in order.
struct DeleteRedundantColumn {
  std::size_t col = 0;
  Vector witness;
};
/// New row k is old row order[k].
struct PermuteRows {
  std::vector<std::size_t> order;
};
struct NegateRows {
  std::vector<std::size_t> rows;
};
struct DeleteZeroRow {
  std::size_t row = 0;
};
/// One direct summand of a visible block decomposition.
struct ExtractBlock {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

using StructuralOp = std::variant<PermuteColumns, NegateColumn, AddColumnMultiple, DeleteRedundantColumn,
                                  PermuteRows, NegateRows, DeleteZeroRow, ExtractBlock>;

std::string_view op_name(const StructuralOp& op);

/// Target matrix of a structural op; throws DomainError on a violated precondition.
HeubergerMatrix apply_structural(const HeubergerMatrix& m, const StructuralOp& op);

/// The generator map of the op as an isomorphism, or nullopt for the
/// chromatic-number-preserving ops (zero-row deletion, block extraction)
/// that are not realized by a map tau(e_i) = ±e_k.
std::optional<GeneratorImages> structural_images(const HeubergerMatrix& m, const StructuralOp& op);

struct StructuralStep {
  StructuralOp op;
  HeubergerMatrix source;
  HeubergerMatrix target;
};

struct StructuralResult {
  SACGraph graph;
  StructuralStep step;
};

StructuralResult apply_structural(const SACGraph& g, const StructuralOp& op);

StructuralResult permute_columns(const SACGraph& g, std::vector<std::size_t> order);
StructuralResult negate_column(const SACGraph& g, std::size_t col);
StructuralResult add_column_multiple(const SACGraph& g, std::size_t target, std::size_t source,
                                     const Integer& factor);
/// Deletes a column after finding a witness that it lies in the span of the others.
StructuralResult delete_redundant_column(const SACGraph& g, std::size_t col);
StructuralResult permute_rows(const SACGraph& g, std::vector<std::size_t> order);
StructuralResult negate_rows(const SACGraph& g, std::vector<std::size_t> rows);
StructuralResult delete_zero_row(const SACGraph& g, std::size_t row);

/// Splits along connected components of the row/column nonzero pattern. Zero
/// columns are dropped; a zero row forms its own 1 x 0 block. Blocks are
/// ordered by their smallest row index.
std::vector<StructuralResult> block_split(const SACGraph& g);

// ---------------------------------------------------------------------------
// Vertices

/// True iff some ±e_i lies in the column lattice.
bool has_loops(const SACGraph& g);
/// Index i with e_i in the lattice, if any.
std::optional<std::size_t> loop_generator(const SACGraph& g);

/// Unique representative of v modulo the column lattice.
Vector canonicalize_vertex(const Vector& v, const SACGraph& g);

// ---------------------------------------------------------------------------
// Matrix text format: "m r" header, then m rows of r integers. Blank lines and
// '#' comments are ignored.

HeubergerMatrix parse_matrix(std::istream& in);
HeubergerMatrix parse_matrix(std::string_view text);
std::string format_matrix(const HeubergerMatrix& m);

}  // namespace heuberger
