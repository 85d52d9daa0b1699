#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "heuberger/matrix.hpp"

namespace heuberger {

/// Column-style Hermite normal form: `original * u == h`, `u` unimodular.
///
/// `h` is lower echelon by columns. Column k (k < rank) has its first nonzero
/// entry, the pivot, at row `pivots[k]`; pivots are positive and strictly
/// increasing in row index. Every entry to the left of a pivot in the pivot's
/// row lies in [0, pivot). Columns rank..cols-1 of `h` are zero, so the
/// matching columns of `u` span the integer kernel of the original matrix.
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
  /// The nonzero columns of `h`: the canonical basis of the column lattice.
  IntMatrix basis() const { return h.column_range(0, rank()); }
};

/// Smith normal form: `u * original * v == d`, `u` and `v` unimodular.
/// `diag` holds the min(rows, cols) diagonal entries d1 | d2 | ..., zeros last.
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  Vector diag;
};

HermiteForm hnf(const IntMatrix& m);
SmithForm snf(const IntMatrix& m);

/// Exact determinant by fraction-free elimination. Throws DimensionError when
/// the matrix is not square. The empty matrix has determinant 1.
Integer det(const IntMatrix& m);

/// gcd of the absolute values; 0 for an empty or all-zero list.
Integer gcd_vec(std::span<const Integer> values);

/// Coefficients c with basis * c == v, or nullopt when v is outside the integer
/// column span. Throws DimensionError when v has the wrong length.
std::optional<Vector> lattice_membership(const IntMatrix& basis, const Vector& v);

/// True iff the integer column spans coincide (canonical HNF comparison).
bool lattice_equal(const IntMatrix& b1, const IntMatrix& b2);

/// Basis of { x in Z^m : gen_images * x in span_Z(relations) } as an m x r
/// matrix of full column rank. `relations` may have zero columns.
IntMatrix kernel_mod_lattice(const IntMatrix& gen_images, const IntMatrix& relations);

/// Generalized cross product of an (r+1) x r matrix: component j is
/// (-1)^(j+1) times the minor with row j deleted (j counted from 0).
Vector cross_product(const IntMatrix& m);

/// Index of the column lattice in Z^rows; 0 when the lattice is not of full rank.
Integer lattice_index(const IntMatrix& m);

/// Reduces vectors modulo a fixed lattice to their unique HNF representative.
///
/// Representatives have every pivot-row coordinate in [0, pivot); the other
/// coordinates are untouched by reduction and are therefore free.
class LatticeReducer {
 public:
  explicit LatticeReducer(const IntMatrix& basis);

  std::size_t dimension() const { return form_.h.rows(); }
  const HermiteForm& form() const { return form_; }

  Vector reduce(Vector v) const;
  /// Reduction that also returns coefficients in terms of the original basis.
  /// Returns nullopt when v is not a lattice element.
  std::optional<Vector> solve(const Vector& v) const;
  bool contains(const Vector& v) const;

 private:
  HermiteForm form_;
};

}  // namespace heuberger
