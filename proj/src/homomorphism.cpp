#include "heuberger/homomorphism.hpp"

#include <algorithm>

namespace heuberger {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Collapses every row into one, then reduces each nonzero column to e and
// deletes the redundant copies, ending at the 1 x 1 matrix (e).
void collapse_to_cycle(HomChain& chain, const Integer& e) {
  while (chain.target().rows() > 1) chain.then(CollapseTopRows{});
  {
    const IntMatrix row = chain.target();
    for (std::size_t j = 0; j < row.cols(); ++j) {
      if (row(0, j) == 0 || row(0, j) == e) continue;
      if (e == 0 || !mpz_divisible_p(row(0, j).get_mpz_t(), e.get_mpz_t()))
        throw DomainError("collapse_to_cycle: column sum not divisible by the cycle length");
      chain.then(ColumnReduce{j, Integer(row(0, j) / e)});
    }
  }
  const IntMatrix row = chain.target();
  std::optional<std::size_t> keep;
  for (std::size_t j = 0; j < row.cols() && !keep; ++j)
    if (row(0, j) == e) keep = j;
  for (std::size_t j = row.cols(); j-- > 0;) {
    if (keep && j == *keep) continue;
    IntMatrix cur = chain.target();
    auto witness = lattice_membership(cur.without_column(j), cur.column(j));
    chain.then(DeleteRedundantColumn{j, *witness});
  }
  if (chain.target().cols() == 0) chain.then(AppendColumn{Vector{Integer(e)}});
}

std::vector<std::size_t> negative_rows(const Vector& column) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < column.size(); ++i)
    if (column[i] < 0) rows.push_back(i);
  return rows;
}

}  // namespace

std::string step_name(const StepKind& kind) {
  return std::visit(overloaded{
                        [](const ColumnReduce&) { return std::string("column_reduce"); },
                        [](const CollapseTopRows&) { return std::string("collapse_top_rows"); },
                        [](const AppendColumn&) { return std::string("append_column"); },
                        [](const AppendZeroRow&) { return std::string("append_zero_row"); },
                        [](const StructuralOp& op) { return std::string(op_name(op)); },
                        [](const GeneratorMap&) { return std::string("generator_map"); },
                    },
                    kind);
}

HeubergerMatrix apply_step(const HeubergerMatrix& m, const StepKind& kind) {
  return std::visit(
      overloaded{
          [&](const ColumnReduce& c) {
            if (c.col >= m.cols()) throw DomainError("column_reduce: column index out of range");
            if (c.factor == 0) throw DomainError("column_reduce: factor must be nonzero");
            IntMatrix out = m;
            for (std::size_t i = 0; i < m.rows(); ++i) {
              if (!mpz_divisible_p(m(i, c.col).get_mpz_t(), c.factor.get_mpz_t()))
                throw DomainError("column_reduce: column " + std::to_string(c.col) + " is not divisible by " +
                                  c.factor.get_str());
              out(i, c.col) = m(i, c.col) / c.factor;
            }
            return out;
          },
          [&](const CollapseTopRows&) {
            if (m.rows() < 2) throw DomainError("collapse_top_rows needs dimension >= 2");
            IntMatrix out = m.without_row(1);
            for (std::size_t j = 0; j < m.cols(); ++j) out(0, j) = m(0, j) + m(1, j);
            return out;
          },
          [&](const AppendColumn& a) { return m.with_column(a.column); },
          [&](const AppendZeroRow&) { return m.with_zero_row(); },
          [&](const StructuralOp& op) { return apply_structural(m, op); },
          [&](const GeneratorMap& g) {
            if (!validate_generator_map(m, g.target, g.images))
              throw DomainError("generator_map does not send the relation lattice into the target lattice");
            return g.target;
          },
      },
      kind);
}

std::optional<GeneratorImages> step_images(const HeubergerMatrix& m, const StepKind& kind) {
  return std::visit(overloaded{
                        [&](const CollapseTopRows&) -> std::optional<GeneratorImages> {
                          GeneratorImages images(m.rows());
                          for (std::size_t i = 0; i < m.rows(); ++i) images[i] = {i == 0 ? 0 : i - 1, 1};
                          return images;
                        },
                        [&](const StructuralOp& op) { return structural_images(m, op); },
                        [&](const GeneratorMap& g) -> std::optional<GeneratorImages> { return g.images; },
                        [&](const auto&) -> std::optional<GeneratorImages> { return identity_images(m.rows()); },
                    },
                    kind);
}

HomStep make_step(const HeubergerMatrix& source, StepKind kind) {
  HeubergerMatrix target = apply_step(source, kind);
  auto images = step_images(source, kind);
  return HomStep{std::move(kind), source, std::move(target), std::move(images)};
}

HomChain& HomChain::then(StepKind kind) {
  steps.push_back(make_step(target(), std::move(kind)));
  return *this;
}

bool validate_generator_map(const HeubergerMatrix& src, const HeubergerMatrix& dst, const GeneratorImages& images) {
  if (images.size() != src.rows())
    throw DomainError("generator map has " + std::to_string(images.size()) + " images for dimension " +
                      std::to_string(src.rows()));
  for (const auto& img : images) {
    if (img.index >= dst.rows())
      throw DomainError("generator image index " + std::to_string(img.index) + " out of range");
    if (img.sign != 1 && img.sign != -1) throw DomainError("generator image sign must be +1 or -1");
  }
  LatticeReducer target(dst);
  for (std::size_t j = 0; j < src.cols(); ++j) {
    Vector image(dst.rows());
    for (std::size_t i = 0; i < src.rows(); ++i) {
      if (images[i].sign > 0)
        image[images[i].index] += src(i, j);
      else
        image[images[i].index] -= src(i, j);
    }
    if (!target.contains(image)) return false;
  }
  return true;
}

bool chain_is_sound(const HomChain& chain) {
  const HeubergerMatrix* prev = &chain.start;
  for (const auto& step : chain.steps) {
    if (!(step.source == *prev)) return false;
    try {
      if (!(apply_step(step.source, step.kind) == step.target)) return false;
      if (step.images != step_images(step.source, step.kind)) return false;
      if (step.images && !validate_generator_map(step.source, step.target, *step.images)) return false;
    } catch (const Error&) {
      return false;
    }
    prev = &step.target;
  }
  return true;
}

BipartiteResult bipartite_test(const HeubergerMatrix& m) {
  BipartiteResult out;
  out.column_sums.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    out.column_sums.push_back(m.column_sum(j));
    if (!out.odd_column && mpz_odd_p(out.column_sums.back().get_mpz_t())) out.odd_column = j;
  }
  out.bipartite = !out.odd_column.has_value();
  return out;
}

std::optional<int> cycle_chromatic_number(const Integer& e) {
  if (abs(e) == 1) return std::nullopt;
  return mpz_even_p(e.get_mpz_t()) ? 2 : 3;
}

std::optional<CycleCertificate> gcd3_bound(const HeubergerMatrix& m) {
  Vector sums;
  for (std::size_t j = 0; j < m.cols(); ++j) sums.push_back(m.column_sum(j));
  Integer e = gcd_vec(sums);
  if (e <= 1) return std::nullopt;
  CycleCertificate cert{*cycle_chromatic_number(e), e, HomChain(m)};
  collapse_to_cycle(cert.chain, e);
  return cert;
}

std::optional<SignSearchResult> sign_search_bound(const HeubergerMatrix& m, std::size_t limit) {
  const std::size_t d = m.rows();
  if (d == 0) return std::nullopt;
  std::vector<std::vector<int>> patterns;
  if (d <= limit && d <= 63) {
    const std::uint64_t count = std::uint64_t{1} << (d - 1);
    patterns.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      std::vector<int> eps(d, 1);
      for (std::size_t i = 1; i < d; ++i)
        if ((mask >> (d - 1 - i)) & 1U) eps[i] = -1;
      patterns.push_back(std::move(eps));
    }
  } else {
    std::vector<int> ones(d, 1), alternating(d, 1);
    for (std::size_t i = 1; i < d; i += 2) alternating[i] = -1;
    patterns = {ones, alternating};
  }

  std::optional<std::size_t> best;
  Integer best_g;
  int best_bound = 0;
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    Integer g = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer s = 0;
      for (std::size_t i = 0; i < d; ++i) s += patterns[p][i] > 0 ? m(i, j) : Integer(-m(i, j));
      g = gcd(g, s);
    }
    auto bound = cycle_chromatic_number(g);
    if (!bound) continue;
    if (!best || *bound < best_bound) {
      best = p;
      best_g = g;
      best_bound = *bound;
      if (best_bound == 2) break;
    }
  }
  if (!best) return std::nullopt;

  SignSearchResult out{{best_bound, best_g, HomChain(m)}, patterns[*best]};
  std::vector<std::size_t> negated;
  for (std::size_t i = 0; i < d; ++i)
    if (out.signs[i] < 0) negated.push_back(i);
  if (!negated.empty()) out.certificate.chain.then(StructuralOp{NegateRows{negated}});
  collapse_to_cycle(out.certificate.chain, best_g);
  return out;
}

TomatoCageResult tomato_cage(const HeubergerMatrix& m) {
  if (m.cols() != 1) throw DomainError("tomato_cage needs exactly one column, got " + std::to_string(m.cols()));
  const Vector y = m.column(0);
  TomatoCageResult out;
  std::size_t odd = 0, nonzero = 0;
  for (const auto& x : y) {
    out.abs_sum += abs(x);
    if (mpz_odd_p(x.get_mpz_t())) ++odd;
    if (x != 0) ++nonzero;
  }
  if (nonzero == 1 && out.abs_sum == 1) {
    out.verdict = TomatoVerdict::Loops;
    return out;
  }
  out.verdict = odd % 2 == 0 ? TomatoVerdict::Two : TomatoVerdict::Three;
  HomChain chain(m);
  if (auto neg = negative_rows(y); !neg.empty()) chain.then(StructuralOp{NegateRows{neg}});
  while (chain.target().rows() > 1) chain.then(CollapseTopRows{});
  out.chain = std::move(chain);
  return out;
}

namespace {

struct BlockBounds {
  BoundCertificate lower;
  std::optional<BoundCertificate> upper;
};

BoundCertificate edge_lower_bound() { return BoundCertificate{2, "edge", {}, std::nullopt}; }

// Bounds for a loop-free matrix without zero columns and not splitting further.
BlockBounds analyze_block(const HeubergerMatrix& m, const PipelineOptions& options) {
  BlockBounds out{edge_lower_bound(), std::nullopt};
  if (m.cols() == 0 || m.is_zero()) {
    HomChain chain(m);
    collapse_to_cycle(chain, 0);
    out.upper = BoundCertificate{2, "rank-0", {std::move(chain)}, std::nullopt};
    return out;
  }
  if (m.cols() == 1) {
    TomatoCageResult t = tomato_cage(m);
    int value = t.verdict == TomatoVerdict::Two ? 2 : 3;
    if (value == 3) out.lower = BoundCertificate{3, "odd-closed-walk", {}, m.column(0)};
    out.upper = BoundCertificate{value, "tomato-cage", {std::move(*t.chain)}, std::nullopt};
    return out;
  }
  BipartiteResult bip = bipartite_test(m);
  if (bip.bipartite) {
    HomChain chain(m);
    Integer e = gcd_vec(bip.column_sums);
    collapse_to_cycle(chain, e);
    if (e > 2) chain.then(ColumnReduce{0, Integer(e / 2)});
    out.upper = BoundCertificate{2, "bipartite", {std::move(chain)}, std::nullopt};
    return out;
  }
  out.lower = BoundCertificate{3, "odd-closed-walk", {}, m.column(*bip.odd_column)};
  if (auto g = gcd3_bound(m)) {
    out.upper = BoundCertificate{g->bound, "column-sum-gcd", {std::move(g->chain)}, std::nullopt};
    return out;
  }
  if (auto s = sign_search_bound(m, options.sign_search_limit)) {
    out.upper = BoundCertificate{s->certificate.bound, "sign-search", {std::move(s->certificate.chain)}, std::nullopt};
  }
  return out;
}

}  // namespace

ChiReport chi_upper_pipeline(const SACGraph& g, const PipelineOptions& options) {
  ChiReport report;
  if (auto loop = loop_generator(g)) {
    report.loops = true;
    report.loop_generator = loop;
    return report;
  }

  SACGraph cur = g;
  for (std::size_t j = cur.rank(); j-- > 0;) {
    if (!cur.matrix().column_is_zero(j)) continue;
    StructuralResult r = delete_redundant_column(cur, j);
    report.reductions.push_back(r.step);
    cur = r.graph;
  }
  for (std::size_t i = cur.dimension(); i-- > 0;) {
    if (cur.dimension() < 2 || !cur.matrix().row_is_zero(i)) continue;
    StructuralResult r = delete_zero_row(cur, i);
    report.reductions.push_back(r.step);
    cur = r.graph;
  }

  std::vector<HeubergerMatrix> blocks;
  if (cur.rank() > 0) {
    std::vector<StructuralResult> split = block_split(cur);
    if (split.size() > 1) {
      for (auto& b : split) {
        report.reductions.push_back(b.step);
        blocks.push_back(b.graph.matrix());
      }
    }
  }
  if (blocks.empty()) blocks.push_back(cur.matrix());

  std::optional<BoundCertificate> lower, upper;
  bool all_upper = true;
  std::vector<HomChain> chains;
  for (const auto& block : blocks) {
    BlockBounds b = analyze_block(block, options);
    if (!lower || b.lower.value > lower->value) lower = b.lower;
    if (!b.upper) {
      all_upper = false;
      continue;
    }
    if (!upper || b.upper->value > upper->value) upper = *b.upper;
    for (auto& c : b.upper->chains) chains.push_back(std::move(c));
  }
  report.lower = lower;
  if (all_upper && upper) {
    if (blocks.size() > 1) upper->rule = "block-max";
    upper->chains = std::move(chains);
    report.upper = upper;
  }
  report.exact = report.lower && report.upper && report.lower->value == report.upper->value;
  return report;
}

HeubergerMatrix minpoly_band_matrix(const std::vector<Integer>& coeffs, std::size_t cols) {
  if (coeffs.size() < 2) throw DomainError("minpoly_band_matrix needs degree >= 1");
  if (coeffs.back() == 0) throw DomainError("minpoly_band_matrix: leading coefficient must be nonzero");
  if (cols < 1) throw DomainError("minpoly_band_matrix needs at least one column");
  const std::size_t d = coeffs.size() - 1;
  IntMatrix m(d + cols, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i <= d; ++i) m(j + i, j) = coeffs[i];
  return m;
}

Integer evaluate_polynomial(const std::vector<Integer>& coeffs, const Integer& x) {
  Integer acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool minpoly_three_colorable(const std::vector<Integer>& coeffs) {
  if (coeffs.size() < 2 || coeffs.back() == 0) throw DomainError("minpoly_three_colorable: invalid coefficients");
  return abs(evaluate_polynomial(coeffs, 1)) != 1 || abs(evaluate_polynomial(coeffs, -1)) != 1;
}

}  // namespace heuberger
