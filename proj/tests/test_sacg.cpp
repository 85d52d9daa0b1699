#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "heuberger/sacg.hpp"
#include "support.hpp"

using namespace heuberger;
using support::Rng;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) { return std::vector<Integer>(xs.begin(), xs.end()); }

std::vector<Integer> sorted(std::vector<Integer> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Row k is sign[k] times row order[k] of m, the action of PermuteRows and
// NegateRows on a comparison basis.
IntMatrix apply_rows(const IntMatrix& m, const std::vector<std::size_t>& order, const std::vector<int>& sign) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k)
    for (std::size_t j = 0; j < m.cols(); ++j) out(k, j) = sign[k] * m(order[k], j);
  return out;
}

}  // namespace

TEST_SUITE("sacg") {
  TEST_CASE("from_group_spec examples") {
    SACGraph c = from_group_spec(Circulant{35, ints({6, 10})});
    CHECK(lattice_equal(c.matrix(), IntMatrix::from_rows({{5, 0}, {4, 7}})));
    CHECK(c.provenance().has_value());

    SACGraph d = from_group_spec(DistanceSet{ints({6, 10, 25})});
    CHECK(lattice_equal(d.matrix(), IntMatrix::from_columns({{5, 12, -6}, {0, -5, 2}}, 3)));

    SACGraph q = from_group_spec(CubeLike::from_masks(3, {1, 2, 4, 7}));
    IntMatrix w4 = IntMatrix::from_rows({{1, 2, 0, 0, 0}, {1, 0, 2, 0, 0}, {1, 0, 0, 2, 0}, {1, 0, 0, 0, 2}});
    CHECK(lattice_equal(q.matrix(), w4));
  }

  TEST_CASE("from_group_spec with an explicit quotient") {
    // Z_4 x Z_2 generated by (1,0) and (0,1) and (1,1).
    Quotient spec{IntMatrix::from_rows({{4, 0}, {0, 2}}), IntMatrix::from_rows({{1, 0, 1}, {0, 1, 1}})};
    SACGraph g = from_group_spec(spec);
    CHECK(g.dimension() == 3);
    CHECK(lattice_index(g.matrix()) == 8);
  }

  TEST_CASE("from_group_spec errors") {
    CHECK_THROWS_AS(from_group_spec(Circulant{12, ints({4, 6})}), GenerationError);
    try {
      from_group_spec(Circulant{12, ints({4, 6})});
    } catch (const GenerationError& e) {
      CHECK(e.index() == 2);
    }
    try {
      from_group_spec(DistanceSet{ints({4, 6})});
    } catch (const GenerationError& e) {
      CHECK(e.index() == 2);
    }
    CHECK_THROWS_AS(from_group_spec(Circulant{7, ints({7})}), DomainError);
    CHECK_THROWS_AS(from_group_spec(Circulant{7, {}}), DomainError);
    CHECK_THROWS_AS(from_group_spec(DistanceSet{ints({3, 3})}), DomainError);
    CHECK_THROWS_AS(from_group_spec(DistanceSet{ints({0, 1})}), DomainError);
    CHECK_THROWS_AS(from_group_spec(CubeLike::from_masks(2, {1})), GenerationError);
    CHECK_THROWS_AS(from_group_spec(CubeLike::from_masks(2, {1, 1, 2})), DomainError);
  }

  TEST_CASE("circulant generators are deduplicated as +- pairs") {
    SACGraph a = from_group_spec(Circulant{35, ints({6, 29, 10})});
    CHECK(a.dimension() == 2);
    CHECK(lattice_equal(a.matrix(), IntMatrix::from_rows({{5, 0}, {4, 7}})));
  }

  TEST_CASE("distance_to_matrix examples") {
    CHECK(distance_to_matrix(ints({6, 10, 25})) == IntMatrix::from_rows({{5, 0}, {-3, -5}, {0, 2}}));
    CHECK(distance_to_matrix(ints({1, 2})) == IntMatrix::from_rows({{-2}, {1}}));
    CHECK(distance_to_matrix(ints({3, 5})) == IntMatrix::from_rows({{-5}, {3}}));
    CHECK_THROWS_AS(distance_to_matrix(ints({4, 6})), DomainError);
    CHECK_THROWS_AS(distance_to_matrix(ints({-1, 2})), DomainError);
  }

  TEST_CASE("circulant_to_matrix examples") {
    IntMatrix m = circulant_to_matrix(35, ints({6, 10}));
    CHECK(m == IntMatrix::from_rows({{5, 0}, {-3, -7}}));
    CHECK(lattice_equal(m, IntMatrix::from_rows({{5, 0}, {4, 7}})));
    CHECK(circulant_to_matrix(5, ints({1})) == IntMatrix::from_rows({{5}}));
    CHECK(circulant_to_matrix(2, ints({1})) == IntMatrix::from_rows({{2}}));
    CHECK_THROWS_AS(circulant_to_matrix(12, ints({4, 6})), DomainError);
  }

  TEST_CASE("matrix_to_distance examples") {
    auto d = matrix_to_distance(IntMatrix::from_rows({{5, 0}, {-12, 5}, {6, -2}}));
    REQUIRE(d);
    CHECK(*d == ints({6, 10, 25}));
    CHECK_FALSE(matrix_to_distance(IntMatrix::from_rows({{2, 0}, {0, 2}, {0, 0}})));
    CHECK(check_distance(IntMatrix::from_rows({{2, 0}, {0, 2}, {0, 0}})).failure == "gcd(v) = 4");
    CHECK(check_distance(IntMatrix::from_rows({{1, 2}, {1, 2}, {1, 2}})).failure == "v = 0");
    auto e = matrix_to_distance(IntMatrix::from_rows({{-5}, {3}}));
    REQUIRE(e);
    CHECK(check_distance(IntMatrix::from_rows({{-5}, {3}})).cross == ints({-3, -5}));
    CHECK(*e == ints({3, 5}));
    CHECK_THROWS_AS(matrix_to_distance(IntMatrix::identity(2)), DimensionError);
  }

  TEST_CASE("matrix_to_circulant examples") {
    IntMatrix m = IntMatrix::from_rows({{5, 0}, {4, 7}});
    auto last = matrix_to_circulant(m, DeleteColumn::Last);
    REQUIRE(last);
    CHECK(last->n == 35);
    CHECK(last->connections == ints({4, 5}));
    // {±4, ±5} is {±6, ±10} times the unit 19 modulo 35.
    CHECK((19 * 4) % 35 == 6);
    CHECK((19 * 5) % 35 == 25);
    CHECK(35 - 25 == 10);

    CirculantCheck first = check_circulant(m, DeleteColumn::First);
    CHECK_FALSE(first.circulant);
    CHECK(first.cross == ints({-7, 0}));
    CHECK(first.failure == "gcd(v) = 7");

    auto cycle = matrix_to_circulant(IntMatrix::from_rows({{9}}), DeleteColumn::First);
    REQUIRE(cycle);
    CHECK(cycle->n == 9);
    CHECK(cycle->connections == ints({1}));
    CHECK(check_circulant(IntMatrix::from_rows({{1, 2}, {2, 4}}), DeleteColumn::Last).failure == "det = 0");
    CHECK_THROWS_AS(matrix_to_circulant(IntMatrix(2, 3), DeleteColumn::Last), DimensionError);
  }

  TEST_CASE("structural op examples") {
    SACGraph g(IntMatrix::from_rows({{5, 0}, {-3, -7}}));
    StructuralResult neg = negate_column(g, 1);
    StructuralResult add = add_column_multiple(neg.graph, 0, 1, 1);
    CHECK(add.graph.matrix() == IntMatrix::from_rows({{5, 0}, {4, 7}}));
    CHECK(lattice_equal(add.graph.matrix(), g.matrix()));
    CHECK(add.step.source == neg.graph.matrix());

    StructuralResult del = delete_zero_row(SACGraph(IntMatrix::from_rows({{3}, {0}})), 1);
    CHECK(del.graph.matrix() == IntMatrix::from_rows({{3}}));
    CHECK_THROWS_AS(delete_zero_row(SACGraph(IntMatrix::from_rows({{3}, {1}})), 1), DomainError);
    CHECK_THROWS_AS(delete_zero_row(SACGraph(IntMatrix(1, 0)), 0), DomainError);

    auto blocks = block_split(SACGraph(IntMatrix::from_rows({{2, 0}, {0, 3}})));
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].graph.matrix() == IntMatrix::from_rows({{2}}));
    CHECK(blocks[1].graph.matrix() == IntMatrix::from_rows({{3}}));

    StructuralResult red = delete_redundant_column(SACGraph(IntMatrix::from_rows({{2, 4, 3}})), 1);
    CHECK(red.graph.matrix() == IntMatrix::from_rows({{2, 3}}));
    CHECK_THROWS_AS(delete_redundant_column(SACGraph(IntMatrix::from_rows({{2, 3}})), 1), DomainError);
    CHECK_THROWS_AS(apply_structural(IntMatrix::from_rows({{2, 3}}), DeleteRedundantColumn{1, {Integer(1)}}),
                    DomainError);
    CHECK_THROWS_AS(permute_columns(g, {0, 0}), DomainError);
    CHECK_THROWS_AS(negate_rows(g, {0, 0}), DomainError);
  }

  TEST_CASE("block_split on a scrambled direct sum") {
    // Rows {0,2} with columns {1}, rows {1,3} with columns {0,2}, plus a zero column.
    IntMatrix m = IntMatrix::from_rows({{0, 2, 0, 0}, {3, 0, 1, 0}, {0, 5, 0, 0}, {1, 0, 4, 0}});
    auto blocks = block_split(SACGraph(m));
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].graph.matrix() == IntMatrix::from_rows({{2}, {5}}));
    CHECK(blocks[1].graph.matrix() == IntMatrix::from_rows({{3, 1}, {1, 4}}));
    auto zero_row = block_split(SACGraph(IntMatrix::from_rows({{2}, {0}})));
    REQUIRE(zero_row.size() == 2);
    CHECK(zero_row[1].graph.matrix() == IntMatrix(1, 0));
  }

  TEST_CASE("loops and canonical vertices") {
    CHECK(has_loops(SACGraph(IntMatrix::from_rows({{1}}))));
    CHECK_FALSE(has_loops(SACGraph(IntMatrix::from_rows({{5, 0}, {4, 7}}))));
    CHECK(has_loops(SACGraph(IntMatrix::from_rows({{1}, {0}}))));
    CHECK(loop_generator(SACGraph(IntMatrix::from_rows({{2, 0}, {0, 1}}))) == std::optional<std::size_t>(1));

    SACGraph g(IntMatrix::from_rows({{5, 0}, {4, 7}}));
    CHECK(canonicalize_vertex({6, 0}, g) == canonicalize_vertex({1, 3}, g));
    CHECK(canonicalize_vertex({0, 0}, g) == Vector{0, 0});
    CHECK(canonicalize_vertex({5, 4}, g) == Vector{0, 0});
    CHECK_THROWS_AS(canonicalize_vertex({1}, g), DimensionError);
  }

  TEST_CASE("matrix text format") {
    IntMatrix m = parse_matrix("# Z_35 circulant\n2 2\n5 0\n\n4 7  # second row\n");
    CHECK(m == IntMatrix::from_rows({{5, 0}, {4, 7}}));
    CHECK(parse_matrix(format_matrix(m)) == m);
    CHECK(parse_matrix("2 0\n\n\n") == IntMatrix(2, 0));
    CHECK_THROWS_AS(parse_matrix("2 2\n5 0\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2 2\n5 0 1\n4 7\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("1 1\nx\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
    try {
      parse_matrix("2 2\n5 0\n4 q\n");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK(parse_matrix("1 1\n123456789012345678901234567890\n")(0, 0) == Integer("123456789012345678901234567890"));
  }

  TEST_CASE("property: distance sets round trip") {
    int checked = 0;
    for (long a = 1; a <= 12; ++a)
      for (long b = a + 1; b <= 12; ++b) {
        for (long c = b; c <= 12; ++c) {
          std::vector<Integer> set = c == b ? ints({a, b}) : ints({a, b, c});
          if (gcd_vec(set) != 1) continue;
          SACGraph g = from_group_spec(DistanceSet{set});
          auto back = matrix_to_distance(g.matrix());
          REQUIRE(back);
          CHECK(sorted(*back) == set);
          CHECK(lattice_equal(distance_to_matrix(set), g.matrix()));
          ++checked;
        }
      }
    CHECK(checked > 100);
  }

  TEST_CASE("property: circulants round trip up to a unit") {
    for (long n = 3; n <= 30; ++n)
      for (long a = 1; a < n; ++a)
        for (long b = a + 1; b < n; ++b) {
          if (std::gcd(std::gcd(a, b), n) != 1) continue;
          IntMatrix m = circulant_to_matrix(n, ints({a, b}));
          CHECK(lattice_equal(m, kernel_mod_lattice(IntMatrix::from_rows({{a, b}}), IntMatrix::from_rows({{n}}))));
          auto back = matrix_to_circulant(m, DeleteColumn::Last);
          if (!back) back = matrix_to_circulant(m, DeleteColumn::First);
          if (!back) continue;
          CHECK(back->n == n);
          const long c = back->connections[0].get_si(), d = back->connections[1].get_si();
          bool found = false;
          for (long u = 1; u < n && !found; ++u) {
            if (std::gcd(u, n) != 1) continue;
            const long ua = u * a % n, ub = u * b % n;
            const bool first = (ua == c % n || ua == (n - c % n) % n);
            const bool second = (ub == d % n || ub == (n - d % n) % n);
            found = first && second;
          }
          CHECK_MESSAGE(found, "n=" << n << " a=" << a << " b=" << b);
        }
  }

  TEST_CASE("property: structural ops preserve the lattice") {
    Rng rng(21);
    for (int iter = 0; iter < 200; ++iter) {
      const std::size_t rows = rng.uniform(1, 4), cols = rng.uniform(1, 4);
      IntMatrix m = support::random_matrix(rng, rows, cols, -5, 5);
      SACGraph g(m);
      std::vector<std::size_t> corder(cols);
      std::iota(corder.begin(), corder.end(), 0);
      std::shuffle(corder.begin(), corder.end(), rng.gen);
      CHECK(lattice_equal(permute_columns(g, corder).graph.matrix(), m));
      CHECK(lattice_equal(negate_column(g, rng.uniform(0, static_cast<int>(cols) - 1)).graph.matrix(), m));
      if (cols >= 2)
        CHECK(lattice_equal(add_column_multiple(g, 0, 1, rng.uniform(-4, 4)).graph.matrix(), m));
      for (std::size_t j = 0; j < cols; ++j) {
        if (!lattice_membership(m.without_column(j), m.column(j))) continue;
        CHECK(lattice_equal(delete_redundant_column(g, j).graph.matrix(), m));
      }

      std::vector<std::size_t> rorder(rows);
      std::iota(rorder.begin(), rorder.end(), 0);
      std::shuffle(rorder.begin(), rorder.end(), rng.gen);
      IntMatrix basis = support::random_matrix(rng, rows, 2, -5, 5);
      std::vector<int> plus(rows, 1);
      CHECK(lattice_equal(permute_rows(g, rorder).graph.matrix(), apply_rows(m, rorder, plus)));
      std::vector<std::size_t> negated;
      std::vector<int> sign(rows, 1);
      std::vector<std::size_t> ident(rows);
      std::iota(ident.begin(), ident.end(), 0);
      for (std::size_t i = 0; i < rows; ++i)
        if (rng.uniform(0, 1)) {
          negated.push_back(i);
          sign[i] = -1;
        }
      CHECK(lattice_equal(negate_rows(g, negated).graph.matrix(), apply_rows(m, ident, sign)));
      // The same signed permutation keeps an unrelated pair of bases in step.
      CHECK(lattice_equal(apply_rows(hconcat(m, basis), rorder, plus), apply_rows(hconcat(basis, m), rorder, plus)));
    }
  }

  TEST_CASE("property: distance_to_matrix is a kernel basis with cross product +-a") {
    Rng rng(22);
    int checked = 0;
    while (checked < 200) {
      const std::size_t k = rng.uniform(2, 4);
      std::vector<Integer> a;
      for (std::size_t i = 0; i < k; ++i) a.push_back(rng.uniform(1, 60));
      if (gcd_vec(a) != 1) continue;
      IntMatrix m = distance_to_matrix(a);
      CHECK(m.rows() == k);
      CHECK(m.cols() == k - 1);
      IntMatrix row(1, k, a);
      CHECK(lattice_equal(m, kernel_mod_lattice(row, IntMatrix(1, 0))));
      Vector v = cross_product(m);
      for (std::size_t i = 0; i < k; ++i) CHECK(abs(v[i]) == a[i]);
      ++checked;
    }
  }
}
