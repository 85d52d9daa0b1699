#include "heuberger/payan.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace heuberger {

HeubergerMatrix qnd_matrix(std::size_t n) {
  if (n < 1) throw DomainError("qnd_matrix needs n >= 1");
  IntMatrix m(n + 1, n + 2);
  for (std::size_t i = 0; i <= n; ++i) {
    m(i, 0) = 1;
    m(i, i + 1) = 2;
  }
  return m;
}

namespace {

void validate_cube_like(const CubeLike& spec) {
  std::set<std::vector<int>> seen;
  for (const auto& g : spec.generators) {
    if (g.size() != spec.n)
      throw DomainError("cube-like generator has length " + std::to_string(g.size()) + ", expected " +
                        std::to_string(spec.n));
    for (int b : g)
      if (b != 0 && b != 1) throw DomainError("cube-like generator entries must be 0 or 1");
    if (!seen.insert(g).second) throw DomainError("cube-like generators must be distinct");
  }
}

bool has_zero_generator(const CubeLike& spec) {
  return std::any_of(spec.generators.begin(), spec.generators.end(),
                     [](const auto& g) { return std::all_of(g.begin(), g.end(), [](int b) { return b == 0; }); });
}

}  // namespace

HeubergerMatrix cube_like_matrix(const CubeLike& spec) {
  validate_cube_like(spec);
  const std::size_t n = spec.n, m = spec.generators.size();
  if (m == 0) throw DomainError("cube-like spec needs at least one generator");
  // Row-reduce the n x m generator matrix over F_2.
  std::vector<std::vector<int>> a(n, std::vector<int>(m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) a[i][j] = spec.generators[j][i];
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(m, false);
  std::size_t r = 0;
  for (std::size_t j = 0; j < m && r < n; ++j) {
    std::size_t p = r;
    while (p < n && a[p][j] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && a[i][j])
        for (std::size_t k = 0; k < m; ++k) a[i][k] ^= a[r][k];
    pivot_col.push_back(j);
    is_pivot[j] = true;
    ++r;
  }
  if (r < n) {
    Integer index;
    mpz_ui_pow_ui(index.get_mpz_t(), 2, n - r);
    throw GenerationError("cube-like generators span a subgroup of index " + index.get_str(), index);
  }
  std::vector<Vector> columns;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    Vector k(m);
    k[f] = 1;
    for (std::size_t row = 0; row < r; ++row) k[pivot_col[row]] = a[row][f];
    columns.push_back(std::move(k));
  }
  IntMatrix out(m, columns.size() + m);
  for (std::size_t j = 0; j < columns.size(); ++j) out.set_column(j, columns[j]);
  for (std::size_t i = 0; i < m; ++i) out(i, columns.size() + i) = 2;
  return out;
}

IntMatrix reduce_mod2(const IntMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = mod_floor(a(i, j), 2);
  return out;
}

std::string outcome_name(CubeLikeOutcome o) {
  switch (o) {
    case CubeLikeOutcome::Loops:
      return "loops";
    case CubeLikeOutcome::Bipartite:
      return "bipartite";
    case CubeLikeOutcome::AtLeastFour:
      return "at_least_four";
  }
  return "";
}

CubeLikeVerdict payan_analyze(const CubeLike& spec) {
  validate_cube_like(spec);
  CubeLikeVerdict out;
  if (has_zero_generator(spec)) return out;
  const HeubergerMatrix full = cube_like_matrix(spec);
  if (has_loops(SACGraph(full))) return out;

  const std::size_t m = full.rows();
  const std::size_t acols = full.cols() - m;
  const IntMatrix a = reduce_mod2(full.column_range(0, acols));
  std::optional<std::size_t> chosen;
  std::size_t z = 0;
  for (std::size_t j = 0; j < acols; ++j) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < m; ++i) w += a(i, j) != 0 ? 1 : 0;
    if (w % 2 == 1 && (!chosen || w < z)) {
      chosen = j;
      z = w;
    }
  }
  if (!chosen) {
    out.outcome = CubeLikeOutcome::Bipartite;
    return out;
  }
  out.outcome = CubeLikeOutcome::AtLeastFour;
  out.z = z;
  out.column = *chosen;

  std::vector<std::size_t> support;
  std::vector<bool> in_support(m, false);
  for (std::size_t i = 0; i < m; ++i)
    if (a(i, *chosen) != 0) {
      support.push_back(i);
      in_support[i] = true;
    }

  HomChain chain(qnd_matrix(z - 1));
  for (std::size_t k = z; k < m; ++k) chain.then(AppendZeroRow{});

  // Move the rows of (w_z | 2I_z) onto the support of the chosen column.
  std::vector<std::size_t> row_order(m);
  for (std::size_t t = 0; t < z; ++t) row_order[support[t]] = t;
  for (std::size_t i = 0, next = z; i < m; ++i)
    if (!in_support[i]) row_order[i] = next++;
  bool identity_rows = true;
  for (std::size_t i = 0; i < m; ++i) identity_rows = identity_rows && row_order[i] == i;
  if (!identity_rows) chain.then(StructuralOp{PermuteRows{row_order}});

  // Current columns: (A, chosen), then (2I, support[t]) for each t.
  std::vector<std::pair<bool, std::size_t>> current{{true, *chosen}};
  for (std::size_t t = 0; t < z; ++t) current.push_back({false, support[t]});
  for (std::size_t j = 0; j < acols; ++j) {
    if (j == *chosen) continue;
    chain.then(AppendColumn{a.column(j)});
    current.push_back({true, j});
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (in_support[i]) continue;
    Vector col(m);
    col[i] = 2;
    chain.then(AppendColumn{col});
    current.push_back({false, i});
  }
  std::vector<std::size_t> col_order;
  for (std::size_t j = 0; j < acols; ++j)
    col_order.push_back(static_cast<std::size_t>(
        std::find(current.begin(), current.end(), std::make_pair(true, j)) - current.begin()));
  for (std::size_t i = 0; i < m; ++i)
    col_order.push_back(static_cast<std::size_t>(
        std::find(current.begin(), current.end(), std::make_pair(false, i)) - current.begin()));
  bool identity_cols = true;
  for (std::size_t k = 0; k < col_order.size(); ++k) identity_cols = identity_cols && col_order[k] == k;
  if (!identity_cols) chain.then(StructuralOp{PermuteColumns{col_order}});

  if (!(chain.target() == full)) throw Error("payan_analyze: witness chain does not reach the cube-like matrix");
  out.witness = std::move(chain);
  return out;
}

std::pair<int, int> sokolova_color(const std::vector<int>& bits) {
  if (bits.empty()) throw DomainError("sokolova_color needs at least one coordinate");
  int rest = 0;
  for (std::size_t i = 1; i < bits.size(); ++i) rest ^= bits[i] & 1;
  return {bits[0] & 1, rest};
}

Coloring sokolova_upper(std::size_t n) {
  if (n < 2 || n % 2 != 0) throw DomainError("sokolova_upper needs an even n >= 2");
  ConcreteGraph g = materialize_finite(SACGraph(qnd_matrix(n)), kDefaultVertexCap);
  Coloring out{std::vector<int>(g.vertex_count()), 4};
  // Z^{n+1}/H -> Z_2^n sends e_i to e_i for i <= n and e_{n+1} to (1, ..., 1).
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const Vector& x = g.labels[v];
    std::vector<int> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<int>(mod_floor(Integer(x[i] + x[n]), 2).get_si());
    auto [a, b] = sokolova_color(bits);
    out.colors[v] = 2 * a + b;
  }
  return out;
}

std::string PayanEntry::witness_summary() const {
  if (outcome != CubeLikeOutcome::AtLeastFour) return "";
  if (witness_steps == 0) return "z=" + std::to_string(z) + ", identity";
  return "z=" + std::to_string(z) + ", " + std::to_string(witness_steps) + " steps";
}

namespace {

PayanEntry check_spec(std::size_t n, std::uint64_t encoding, std::uint64_t budget) {
  PayanEntry e;
  e.n = n;
  e.encoding = encoding;
  CubeLike spec;
  spec.n = n;
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << n); ++g) {
    if (!((encoding >> (g - 1)) & 1U)) continue;
    e.generators.push_back(g);
  }
  spec = CubeLike::from_masks(n, e.generators);

  CubeLikeVerdict verdict = payan_analyze(spec);
  e.outcome = verdict.outcome;
  e.z = verdict.z;
  const HeubergerMatrix full = cube_like_matrix(spec);
  ChromaticResult chi = chromatic_number(materialize_finite(SACGraph(full)), budget);
  if (chi.status != ChromaticStatus::Exact)
    throw BudgetExceeded("payan check: solver budget exhausted on spec " + std::to_string(encoding));
  e.chi = chi.upper;
  switch (verdict.outcome) {
    case CubeLikeOutcome::Loops:
      e.consistent = false;
      break;
    case CubeLikeOutcome::Bipartite:
      e.consistent = e.chi == 2;
      break;
    case CubeLikeOutcome::AtLeastFour:
      e.witness_steps = verdict.witness->steps.size();
      e.consistent = e.chi >= 4 && verdict.z % 2 == 1 && verdict.z >= 3 && chain_is_sound(*verdict.witness) &&
                     verdict.witness->start == qnd_matrix(verdict.z - 1) && verdict.witness->target() == full;
      break;
  }
  return e;
}

bool generates(std::size_t n, std::uint64_t encoding) {
  // Rank over F_2 of the chosen masks.
  std::vector<std::uint64_t> basis;
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << n); ++g) {
    if (!((encoding >> (g - 1)) & 1U)) continue;
    std::uint64_t v = g;
    for (std::uint64_t b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  return basis.size() == n;
}

}  // namespace

PayanReport exhaustive_payan_check(std::size_t n, const PayanOptions& options) {
  if (n < 1) throw DomainError("payan check needs n >= 1");
  if (options.mode == PayanMode::Exhaustive && n > 4) throw DomainError("exhaustive payan check needs n <= 4");
  if (n > 6) throw DomainError("payan check needs n <= 6");
  PayanReport report;
  report.n = n;
  report.mode = options.mode;
  const std::size_t vectors = (std::size_t{1} << n) - 1;
  const std::uint64_t all = vectors == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << vectors) - 1;

  std::vector<std::uint64_t> encodings;
  if (options.mode == PayanMode::Exhaustive) {
    for (std::uint64_t s = 1; s <= all; ++s)
      if (generates(n, s)) encodings.push_back(s);
  } else {
    std::mt19937_64 rng(options.seed);
    std::set<std::uint64_t> chosen;
    std::size_t attempts = 0;
    const std::size_t max_attempts = options.samples * 1000 + 1000;
    while (chosen.size() < options.samples && attempts++ < max_attempts) {
      std::uint64_t s = rng() & all;
      if (s != 0 && generates(n, s)) chosen.insert(s);
    }
    encodings.assign(chosen.begin(), chosen.end());
  }
  std::sort(encodings.begin(), encodings.end());
  report.entries.reserve(encodings.size());
  for (std::uint64_t s : encodings) {
    PayanEntry e = check_spec(n, s, options.budget);
    if (e.chi == 3) ++report.chi3_count;
    if (!e.consistent) ++report.inconsistent;
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace heuberger
