// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "heuberger/payan.hpp"
#include "support.hpp"

using namespace heuberger;
using support::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

std::vector<Integer> ints(std::initializer_list<long> xs) { return std::vector<Integer>(xs.begin(), xs.end()); }

int exact_chi(const ConcreteGraph& g) {
  ChromaticResult r = chromatic_number(g);
  if (r.status == ChromaticStatus::Uncolorable) return -1;
  return r.status == ChromaticStatus::Exact ? r.upper : 0;
}

Outcome circulant_identity() {
  Outcome o;
  IntMatrix expected = IntMatrix::from_rows({{5, 0}, {4, 7}});
  IntMatrix k = kernel_mod_lattice(IntMatrix::from_rows({{6, 10}}), IntMatrix::from_rows({{35}}));
  o.require(lattice_equal(k, expected), "kernel differs from [[5,0],[4,7]]");
  o.require(hnf(k).h == hnf(expected).h, "canonical forms differ");
  o.require(hnf(circulant_to_matrix(35, ints({6, 10}))).h == hnf(expected).h, "circulant_to_matrix differs");
  return o;
}

Outcome zhu_round_trip() {
  Outcome o;
  IntMatrix m = IntMatrix::from_rows({{5, 0}, {-12, 5}, {6, -2}});
  o.require(matrix_to_distance(m) == ints({6, 10, 25}), "matrix_to_distance != {6,10,25}");
  IntMatrix k = kernel_mod_lattice(IntMatrix::from_rows({{6, 10, 25}}), IntMatrix(1, 0));
  IntMatrix negated = m;
  negated.negate_row(1);
  negated.negate_row(2);
  o.require(lattice_equal(k, negated), "kernel of (6,10,25) differs from the row-negated matrix");
  return o;
}

Outcome ees_sweep() {
  Outcome o;
  for (long a = 1; a <= 12; ++a)
    for (long b = a + 1; b <= 12; ++b) {
      if (std::gcd(a, b) != 1) continue;
      const int expected = (a % 2 == b % 2) ? 2 : 3;
      SACGraph g(distance_to_matrix(ints({a, b})));
      ChiReport r = chi_upper_pipeline(g);
      const std::string tag = "{" + std::to_string(a) + "," + std::to_string(b) + "}";
      o.require(r.exact && r.upper && r.upper->value == expected, "pipeline value for " + tag);
      ChromaticResult ball = chromatic_number(ball_subgraph(g, static_cast<std::size_t>(a + b)));
      o.require(ball.lower == expected, "ball lower bound for " + tag);
    }
  return o;
}

Outcome unit_distance() {
  Outcome o;
  ChiReport r = chi_upper_pipeline(SACGraph(IntMatrix::from_rows({{4, 0}, {-5, 4}, {4, -5}, {0, 4}})));
  o.require(r.exact, "lemmas do not settle the value");
  o.require(r.lower && r.lower->value == 3 && r.upper && r.upper->value == 3, "value is not 3");
  for (const auto& c : r.upper->chains) o.require(chain_is_sound(c), "unsound chain");
  return o;
}

Outcome tomato_suite() {
  Outcome o;
  Rng rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t m = rng.uniform(1, 4);
    IntMatrix col = support::random_matrix(rng, m, 1, -5, 5);
    SACGraph g(col);
    TomatoCageResult t = tomato_cage(col);
    ChiReport report = chi_upper_pipeline(g);
    const std::string tag = "column " + to_string(col);
    if (t.verdict == TomatoVerdict::Loops) {
      o.require(report.loops, "pipeline misses the loop in " + tag);
      o.require(ball_subgraph(g, 1).has_loops(), "ball has no loop for " + tag);
      continue;
    }
    const int value = t.verdict == TomatoVerdict::Two ? 2 : 3;
    o.require(report.exact && report.upper && report.upper->value == value, "lemma bound for " + tag);
    // A closed walk of length s stays within floor(s/2) of its start.
    const std::size_t s = t.abs_sum.get_ui();
    const std::size_t radius = value == 2 ? 1 : (s + 1) / 2;
    ChromaticResult ball = chromatic_number(ball_subgraph(g, radius), 200000);
    o.require(ball.lower == value, "ball lower bound for " + tag);
  }
  return o;
}

Outcome sokolova() {
  Outcome o;
  for (std::size_t n : {2, 4})
    o.require(exact_chi(materialize_finite(SACGraph(qnd_matrix(n)))) == 4, "chi(Q_" + std::to_string(n) + "^d) != 4");
  for (std::size_t n : {2, 4, 6, 8})
    o.require(check_coloring(materialize_finite(SACGraph(qnd_matrix(n))), sokolova_upper(n)),
              "fold coloring fails for n = " + std::to_string(n));
  return o;
}

Outcome payan(std::size_t n, PayanOptions opts, std::size_t min_entries) {
  Outcome o;
  PayanReport r = exhaustive_payan_check(n, opts);
  o.require(r.entries.size() >= min_entries, "only " + std::to_string(r.entries.size()) + " specs");
  o.require(r.chi3_count == 0, "chi = 3 occurs");
  o.require(r.inconsistent == 0, std::to_string(r.inconsistent) + " inconsistent verdicts");
  return o;
}

Outcome bipartite_property() {
  Outcome o;
  Rng rng(9);
  for (int iter = 0; iter < 300; ++iter) {
    IntMatrix a = support::random_matrix(rng, rng.uniform(1, 4), rng.uniform(1, 3), -3, 3);
    SACGraph g(a);
    BipartiteResult b = bipartite_test(a);
    const std::string tag = to_string(a);
    if (!b.bipartite) {
      std::size_t radius = 0;
      for (std::size_t i = 0; i < a.rows(); ++i) radius += Integer(abs(a(i, *b.odd_column))).get_ui();
      o.require(!is_bipartite_concrete(ball_subgraph(g, radius)), "no odd closed walk in the ball of " + tag);
    } else {
      std::size_t radius = 1;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        std::size_t s = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += Integer(abs(a(i, j))).get_ui();
        radius = std::max(radius, s);
      }
      ConcreteGraph ball = ball_subgraph(g, radius);
      Coloring parity{std::vector<int>(ball.vertex_count()), 2};
      for (std::size_t v = 0; v < ball.vertex_count(); ++v) {
        Integer sum = 0;
        for (const auto& x : ball.labels[v]) sum += x;
        parity.colors[v] = mpz_odd_p(sum.get_mpz_t()) ? 1 : 0;
      }
      o.require(check_coloring(ball, parity), "parity coloring fails on " + tag);
    }
  }
  return o;
}

Outcome block_and_zero_row() {
  Outcome o;
  Rng rng(10);
  auto small_finite = [&] {
    for (;;) {
      const std::size_t m = rng.uniform(1, 2);
      IntMatrix x = support::random_matrix(rng, m, m, -4, 4);
      Integer index = lattice_index(x);
      if (index < 2 || index > 24 || has_loops(SACGraph(x))) continue;
      return x;
    }
  };
  for (int pair = 0; pair < 50; ++pair) {
    IntMatrix x = small_finite(), y = small_finite();
    const int cx = exact_chi(materialize_finite(SACGraph(x)));
    const int cy = exact_chi(materialize_finite(SACGraph(y)));
    const int cz = exact_chi(materialize_finite(SACGraph(direct_sum(x, y))));
    o.require(cx > 0 && cy > 0 && cz == std::max(cx, cy), "direct sum of " + to_string(x) + " and " + to_string(y));
    // The ball has to reach every coset of X in the layer through 0.
    const std::size_t radius = lattice_index(x).get_ui();
    const int cw = exact_chi(ball_subgraph(SACGraph(x.with_zero_row()), radius));
    o.require(cw == cx, "zero-row extension of " + to_string(x));
  }
  return o;
}

Outcome minimal_polynomial() {
  Outcome o;
  const auto p = ints({4, -5, 4});
  o.require(evaluate_polynomial(p, 1) == 3, "p(1) != 3");
  o.require(evaluate_polynomial(p, -1) == 13, "p(-1) != 13");
  o.require(minpoly_three_colorable(p), "verdict not three-colorable");
  std::vector<std::vector<Integer>> polys{p};
  Rng rng(11);
  while (polys.size() < 40) {
    std::vector<Integer> c(rng.uniform(2, 4));
    for (auto& x : c) x = rng.uniform(-5, 5);
    if (c.front() == 0 || c.back() == 0 || !minpoly_three_colorable(c)) continue;
    polys.push_back(c);
  }
  for (const auto& c : polys)
    for (std::size_t cols = 1; cols <= 6; ++cols) {
      ChiReport r = chi_upper_pipeline(SACGraph(minpoly_band_matrix(c, cols)));
      o.require(!r.loops && r.upper && r.upper->value <= 3, "band matrix with " + std::to_string(cols) + " columns");
    }
  return o;
}

Outcome oracle_regression() {
  Outcome o;
  o.require(exact_chi(materialize_finite(SACGraph(circulant_to_matrix(13, ints({1, 5}))))) == 4, "chi(C13(1,5)) != 4");
  o.require(exact_chi(materialize_finite(SACGraph(circulant_to_matrix(5, ints({1}))))) == 3, "chi(C5(1)) != 3");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  PayanOptions sampled;
  sampled.mode = PayanMode::Sampled;
  sampled.samples = 500;
  sampled.seed = 0;
  const std::vector<Criterion> criteria{
      {1, "circulant identity Z_35 {6,10}", 1, circulant_identity},
      {2, "distance round trip {6,10,25}", 1, zhu_round_trip},
      {3, "two-distance parity sweep", 30, ees_sweep},
      {4, "unit-distance example from lemmas", 1, unit_distance},
      {5, "rank-one randomized suite", 60, tomato_suite},
      {6, "cube with diagonals values", 60, sokolova},
      {7, "cube-like exhaustive n = 3", 300, [] { return payan(3, {}, 1); }},
      {8, "cube-like sampled n = 4", 600, [&] { return payan(4, sampled, 500); }},
      {9, "bipartite lemma property", 120, bipartite_property},
      {10, "block and zero-row lemmas", 300, block_and_zero_row},
      {11, "minimal-polynomial bands", 10, minimal_polynomial},
      {12, "oracle regression", 10, oracle_regression},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit) {
      o.ok = false;
      o.note = "over the " + std::to_string(static_cast<int>(c.limit)) + " s limit";
    }
    if (!o.ok) ++failures;
    std::printf("%s  %2d  %-36s %8.3f s%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.ok ? "" : "  ",
                o.note.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
