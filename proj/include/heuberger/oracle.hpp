#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "heuberger/homomorphism.hpp"
#include "heuberger/sacg.hpp"

namespace heuberger {

inline constexpr std::size_t kDefaultVertexCap = 100000;
inline constexpr std::uint64_t kDefaultSolverBudget = 5000000;

/// An explicit graph materialized from a Heuberger matrix.
struct ConcreteGraph {
  /// Sorted neighbor lists without self entries; loops are flagged separately.
  std::vector<std::vector<std::size_t>> adjacency;
  std::vector<bool> loops;
  /// Canonical coset representative of each vertex.
  std::vector<Vector> labels;
  /// Offset realizing +e_i: Smith coordinates for finite quotients, e_i itself
  /// for balls.
  std::vector<Vector> generator_images;
  /// Smith invariant factors of a finite quotient; empty for balls.
  Vector moduli;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t edge_count() const;
  bool has_loops() const;
};

/// The whole quotient Z^m / H. Vertices are ordered by their canonical
/// representative, lexicographically.
ConcreteGraph materialize_finite(const SACGraph& g, std::size_t cap = kDefaultVertexCap);

/// Induced subgraph on the cosets within `radius` generator steps of 0,
/// ordered by distance and then canonical representative.
ConcreteGraph ball_subgraph(const SACGraph& g, std::size_t radius, std::size_t cap = kDefaultVertexCap);

/// Plain graph from an edge list, for tests and external input.
ConcreteGraph graph_from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

struct Coloring {
  std::vector<int> colors;
  int palette = 0;
};

/// True iff c assigns every vertex a color and no edge or loop is monochromatic.
/// Throws DimensionError on a size mismatch.
bool check_coloring(const ConcreteGraph& g, const Coloring& c);

bool is_bipartite_concrete(const ConcreteGraph& g);

enum class ChromaticStatus { Exact, Bracket, Uncolorable };

struct ChromaticResult {
  ChromaticStatus status = ChromaticStatus::Exact;
  int lower = 0;
  int upper = 0;
  /// A proper coloring with `upper` colors (empty when uncolorable).
  Coloring coloring;
  std::vector<std::size_t> clique;
  std::uint64_t nodes = 0;
};

/// Exact chromatic number by DSATUR branch and bound. Lower bound from a
/// greedy clique (raised to 3 on an odd cycle), upper bound from DSATUR;
/// the search then closes the gap or stops after `budget` nodes.
ChromaticResult chromatic_number(const ConcreteGraph& g, std::uint64_t budget = kDefaultSolverBudget);

/// Samples source vertices and lattice elements, maps them through every
/// generator map of the chain, and checks that each map is well defined on
/// cosets and sends adjacent vertices to adjacent vertices. Steps without a
/// generator map are checked by recomputing their target.
bool verify_hom_chain(const HomChain& chain, std::size_t samples = 200, std::uint64_t seed = 0);

/// `u v` per line, 0-based, u <= v.
void write_edge_list(std::ostream& out, const ConcreteGraph& g);

}  // namespace heuberger
