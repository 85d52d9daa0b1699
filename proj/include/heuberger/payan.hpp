#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heuberger/homomorphism.hpp"
#include "heuberger/oracle.hpp"
#include "heuberger/sacg.hpp"

namespace heuberger {

/// (w_{n+1} | 2I_{n+1}): the cube with diagonals Q_n^d.
HeubergerMatrix qnd_matrix(std::size_t n);

/// (A | 2I_m) where the columns of A are 0/1 lifts of an F_2 kernel basis of
/// the n x m generator matrix. Throws GenerationError when the generators do
/// not span Z_2^n.
HeubergerMatrix cube_like_matrix(const CubeLike& spec);

/// Entries reduced into {0, 1}; equivalent to adding multiples of the 2I
/// columns of an (A | 2I_m) matrix.
IntMatrix reduce_mod2(const IntMatrix& a);

enum class CubeLikeOutcome { Loops, Bipartite, AtLeastFour };

struct CubeLikeVerdict {
  CubeLikeOutcome outcome = CubeLikeOutcome::Loops;
  /// Odd weight of the chosen column of A (AtLeastFour only).
  std::size_t z = 0;
  std::size_t column = 0;
  /// Homomorphism chain from (w_z | 2I_z), the matrix of Q_{z-1}^d, to the
  /// cube-like matrix (AtLeastFour only).
  std::optional<HomChain> witness;
};

/// Verdict for a cube-like graph: loops, bipartite, or chromatic number at
/// least 4 through a homomorphism from Q_{z-1}^d with z - 1 even.
CubeLikeVerdict payan_analyze(const CubeLike& spec);

std::string outcome_name(CubeLikeOutcome o);

/// Color of a Z_2^n element (bits x_1..x_n) under the fold onto K_4:
/// (x_1, x_2 + ... + x_n mod 2).
std::pair<int, int> sokolova_color(const std::vector<int>& bits);

/// The fold 4-coloring of the materialized Q_n^d, indexed like
/// materialize_finite(qnd_matrix(n)). Throws DomainError for odd n.
Coloring sokolova_upper(std::size_t n);

enum class PayanMode { Exhaustive, Sampled };

struct PayanOptions {
  PayanMode mode = PayanMode::Exhaustive;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultSolverBudget;
};

struct PayanEntry {
  std::size_t n = 0;
  /// Generator masks, ascending; bit i of a mask is coordinate i.
  std::vector<std::uint64_t> generators;
  /// Bit (g - 1) set for every generator mask g.
  std::uint64_t encoding = 0;
  CubeLikeOutcome outcome = CubeLikeOutcome::Loops;
  int chi = 0;
  std::size_t z = 0;
  std::size_t witness_steps = 0;
  /// Bipartite iff chi = 2, AtLeastFour iff chi >= 4, and the witness chain
  /// is sound.
  bool consistent = false;

  std::string witness_summary() const;
};

struct PayanReport {
  std::size_t n = 0;
  PayanMode mode = PayanMode::Exhaustive;
  std::vector<PayanEntry> entries;  // sorted by encoding
  std::size_t chi3_count = 0;
  std::size_t inconsistent = 0;
};

/// Enumerates generating subsets of Z_2^n \ {0} (all of them, or distinct
/// random ones), computes the exact chromatic number of each, and compares
/// it with payan_analyze. Exhaustive mode requires n <= 4, sampled mode
/// n <= 6. Throws BudgetExceeded when the solver cannot close a bracket.
PayanReport exhaustive_payan_check(std::size_t n, const PayanOptions& options = {});

}  // namespace heuberger
