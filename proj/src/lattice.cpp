#include "heuberger/lattice.hpp"

#include <algorithm>
#include <utility>

namespace heuberger {

namespace {

// Replaces columns (c, j) of m by (x*c + y*j, p*c + q*j). The 2x2 transform
// must be unimodular for the lattice to be preserved.
void combine_columns(IntMatrix& m, std::size_t c, std::size_t j, const Integer& x, const Integer& y,
                     const Integer& p, const Integer& q) {
  Integer a, b;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    a = m(i, c);
    b = m(i, j);
    m(i, c) = x * a + y * b;
    m(i, j) = p * a + q * b;
  }
}

}  // namespace

HermiteForm hnf(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.cols()), {}};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  const std::size_t ncols = m.cols();
  std::size_t c = 0;
  for (std::size_t i = 0; i < m.rows() && c < ncols; ++i) {
    // Fold row i's entries in columns c+1.. into column c.
    for (std::size_t j = c + 1; j < ncols; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, c) != 0 && mpz_divisible_p(h(i, j).get_mpz_t(), h(i, c).get_mpz_t())) {
        Integer f = -(h(i, j) / h(i, c));
        h.add_column_multiple(j, c, f);
        u.add_column_multiple(j, c, f);
        continue;
      }
      Integer a = h(i, c), b = h(i, j);
      ExtendedGcd e = extended_gcd(a, b);
      Integer p = -(b / e.g), q = a / e.g;
      combine_columns(h, c, j, e.x, e.y, p, q);
      combine_columns(u, c, j, e.x, e.y, p, q);
    }
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0) {
      h.negate_column(c);
      u.negate_column(c);
    }
    const Integer pivot = h(i, c);
    for (std::size_t k = 0; k < c; ++k) {
      Integer f = -floor_div(h(i, k), pivot);
      h.add_column_multiple(k, c, f);
      u.add_column_multiple(k, c, f);
    }
    out.pivots.push_back(i);
    ++c;
  }
  return out;
}

SmithForm snf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm out{m, IntMatrix::identity(rows), IntMatrix::identity(cols), {}};
  IntMatrix& d = out.d;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;
  const std::size_t n = std::min(rows, cols);

  auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
    d.swap_rows(t, i);
    u.swap_rows(t, i);
    d.swap_columns(t, j);
    v.swap_columns(t, j);
  };

  for (std::size_t t = 0; t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (d(i, j) != 0 && (bi == rows || abs(d(i, j)) < abs(d(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    move_to_pivot(t, bi, bj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = -(d(i, t) / d(t, t));
        d.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = -(d(t, j) / d(t, t));
        d.add_column_multiple(j, t, q);
        v.add_column_multiple(j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder survived: it is smaller than the pivot, swap it in.
        std::size_t si = t, sj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < abs(d(si, sj))) {
            si = i;
            sj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < abs(d(si, sj))) {
            si = t;
            sj = j;
          }
        move_to_pivot(t, si, sj);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      d.add_row_multiple(t, bad, 1);
      u.add_row_multiple(t, bad, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  out.diag.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.diag.push_back(d(i, i));
  return out;
}

Integer det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Integer result = a(n - 1, n - 1);
  return sign < 0 ? Integer(-result) : result;
}

Integer gcd_vec(std::span<const Integer> values) {
  Integer g = 0;
  for (const auto& x : values) g = gcd(g, x);
  return g;
}

LatticeReducer::LatticeReducer(const IntMatrix& basis) : form_(hnf(basis)) {}

Vector LatticeReducer::reduce(Vector v) const {
  if (v.size() != dimension()) throw DimensionError("vector length does not match lattice dimension");
  const IntMatrix& h = form_.h;
  for (std::size_t k = 0; k < form_.rank(); ++k) {
    const std::size_t p = form_.pivots[k];
    if (v[p] == 0) continue;
    Integer q = floor_div(v[p], h(p, k));
    if (q == 0) continue;
    for (std::size_t i = p; i < v.size(); ++i) v[i] -= q * h(i, k);
  }
  return v;
}

std::optional<Vector> LatticeReducer::solve(const Vector& target) const {
  if (target.size() != dimension()) throw DimensionError("vector length does not match lattice dimension");
  const IntMatrix& h = form_.h;
  Vector v = target;
  Vector coeffs(form_.rank());
  for (std::size_t k = 0; k < form_.rank(); ++k) {
    const std::size_t p = form_.pivots[k];
    if (v[p] == 0) continue;
    if (!mpz_divisible_p(v[p].get_mpz_t(), h(p, k).get_mpz_t())) return std::nullopt;
    Integer q = v[p] / h(p, k);
    coeffs[k] = q;
    for (std::size_t i = p; i < v.size(); ++i) v[i] -= q * h(i, k);
  }
  if (!is_zero(v)) return std::nullopt;
  // h = original * u, so h * c = original * (u_basis * c).
  return form_.u.column_range(0, form_.rank()) * coeffs;
}

bool LatticeReducer::contains(const Vector& v) const { return is_zero(reduce(v)); }

std::optional<Vector> lattice_membership(const IntMatrix& basis, const Vector& v) {
  if (basis.rows() != v.size()) throw DimensionError("membership: vector length differs from basis rows");
  return LatticeReducer(basis).solve(v);
}

bool lattice_equal(const IntMatrix& b1, const IntMatrix& b2) {
  if (b1.rows() != b2.rows()) throw DimensionError("lattice_equal: ambient dimensions differ");
  return hnf(b1).basis() == hnf(b2).basis();
}

IntMatrix kernel_mod_lattice(const IntMatrix& gen_images, const IntMatrix& relations) {
  const std::size_t k = gen_images.rows();
  const std::size_t m = gen_images.cols();
  if (relations.rows() != k && !(relations.cols() == 0))
    throw DimensionError("kernel_mod_lattice: relations and generator images have different row counts");
  IntMatrix neg_rel(k, relations.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < relations.cols(); ++j) neg_rel(i, j) = -relations(i, j);
  // Kernel of (x, y) -> G x - R y, projected to the x block.
  HermiteForm stacked = hnf(hconcat(gen_images, neg_rel));
  const std::size_t total = m + relations.cols();
  IntMatrix generators(m, total - stacked.rank());
  for (std::size_t j = stacked.rank(); j < total; ++j)
    for (std::size_t i = 0; i < m; ++i) generators(i, j - stacked.rank()) = stacked.u(i, j);
  return hnf(generators).basis();
}

Vector cross_product(const IntMatrix& m) {
  if (m.cols() + 1 != m.rows())
    throw DimensionError("cross_product needs an (r+1) x r matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  Vector v(m.rows());
  for (std::size_t j = 0; j < m.rows(); ++j) {
    Integer minor = det(m.without_row(j));
    v[j] = (j % 2 == 0) ? Integer(-minor) : minor;
  }
  return v;
}

Integer lattice_index(const IntMatrix& m) {
  HermiteForm f = hnf(m);
  if (f.rank() < m.rows()) return 0;
  Integer index = 1;
  for (std::size_t k = 0; k < f.rank(); ++k) index *= f.h(f.pivots[k], k);
  return index;
}

}  // namespace heuberger
