#pragma once

// Test-side generators and independent reference computations. Nothing here
// calls the library's normal forms or solver.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "heuberger/matrix.hpp"

namespace support {

using heuberger::IntMatrix;
using heuberger::Integer;
using heuberger::Vector;
using Adjacency = std::vector<std::vector<std::size_t>>;

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

/// Cofactor expansion along the first row.
inline Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    Integer term = m(0, j) * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

/// Cay(Z_n, {±a}) straight from the definition; loops are dropped.
inline Adjacency circulant_adjacency(long n, const std::vector<long>& connections) {
  Adjacency adj(static_cast<std::size_t>(n));
  for (long v = 0; v < n; ++v) {
    std::set<std::size_t> nb;
    for (long a : connections)
      for (long s : {a, -a}) {
        long u = ((v + s) % n + n) % n;
        if (u != v) nb.insert(static_cast<std::size_t>(u));
      }
    adj[static_cast<std::size_t>(v)].assign(nb.begin(), nb.end());
  }
  return adj;
}

/// Cay(Z_2^n, S) with S given as masks.
inline Adjacency cube_like_adjacency(std::size_t n, const std::vector<std::uint64_t>& masks) {
  Adjacency adj(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < adj.size(); ++v) {
    std::set<std::size_t> nb;
    for (auto s : masks)
      if (s != 0) nb.insert(static_cast<std::size_t>(v ^ s));
    adj[v].assign(nb.begin(), nb.end());
  }
  return adj;
}

/// Plain backtracking over vertices in index order, trying k = 1, 2, ...
inline int brute_chi(const Adjacency& adj) {
  const std::size_t n = adj.size();
  if (n == 0) return 0;
  std::vector<int> color(n, -1);
  std::function<bool(std::size_t, int, int)> fill = [&](std::size_t v, int k, int used) -> bool {
    if (v == n) return true;
    for (int c = 0; c < std::min(k, used + 1); ++c) {
      bool ok = true;
      for (auto u : adj[v])
        if (color[u] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      color[v] = c;
      if (fill(v + 1, k, std::max(used, c + 1))) return true;
      color[v] = -1;
    }
    return false;
  };
  for (int k = 1;; ++k) {
    std::fill(color.begin(), color.end(), -1);
    if (fill(0, k, 0)) return k;
  }
}

inline bool proper(const Adjacency& adj, const std::vector<int>& color) {
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (auto u : adj[v])
      if (color[u] == color[v]) return false;
  return true;
}

}  // namespace support
