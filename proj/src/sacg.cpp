#include "heuberger/sacg.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

namespace heuberger {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string join(const std::vector<Integer>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].get_str();
  }
  return out;
}

void require_positive(const std::vector<Integer>& values, const char* what) {
  if (values.empty()) throw DomainError(std::string(what) + ": empty generator list");
  for (const auto& a : values)
    if (a <= 0) throw DomainError(std::string(what) + ": entries must be positive, got " + a.get_str());
}

// Smallest x >= 0 with a*x ≡ c (mod modulus); the congruence must be solvable.
Integer smallest_solution(const Integer& a, const Integer& c, const Integer& modulus) {
  if (modulus == 1) return 0;
  Integer d = gcd(a, modulus);
  Integer a1 = a / d, c1 = c / d, m1 = modulus / d;
  if (m1 == 1) return 0;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), a1.get_mpz_t(), m1.get_mpz_t());
  return mod_floor(Integer(c1 * inv), m1);
}

// Solves a_0 u_0 + ... + a_{k-1} u_{k-1} = c, choosing each leading
// coefficient as the smallest nonnegative value that keeps the remainder
// solvable by the later terms.
Vector bezout_chain(const std::vector<Integer>& a, std::size_t k, Integer c) {
  Vector u(k);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    Integer rest = 0;
    for (std::size_t j = i + 1; j < k; ++j) rest = gcd(rest, a[j]);
    u[i] = smallest_solution(a[i], c, rest);
    c -= a[i] * u[i];
  }
  u[k - 1] = c / a[k - 1];
  return u;
}

// The distance-graph matrix built from running gcds and Bezout coefficients
// (valid for any r >= 1; gcd of all entries must be 1).
IntMatrix distance_formula(const std::vector<Integer>& a) {
  const std::size_t r = a.size() - 1;
  std::vector<Integer> g(a.size() + 1);  // g[k] = gcd(a_1..a_k), 1-based
  g[0] = 0;
  for (std::size_t k = 1; k <= a.size(); ++k) g[k] = gcd(g[k - 1], a[k - 1]);
  IntMatrix m(r + 1, r);
  m(0, 0) = a[1] / g[2];
  m(1, 0) = -(a[0] / g[2]);
  for (std::size_t k = 2; k <= r; ++k) {
    Integer rhs = a[k] * g[k] / g[k + 1];
    Vector u = bezout_chain(a, k, rhs);
    for (std::size_t i = 0; i < k; ++i) m(i, k - 1) = -u[i];
    m(k, k - 1) = g[k] / g[k + 1];
  }
  return m;
}

bool is_permutation_of_range(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t x : order) {
    if (x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

void check_column(const IntMatrix& m, std::size_t c) {
  if (c >= m.cols()) throw DomainError("column index " + std::to_string(c) + " out of range");
}

}  // namespace

CubeLike CubeLike::from_masks(std::size_t n, const std::vector<std::uint64_t>& masks) {
  CubeLike spec{n, {}};
  for (std::uint64_t mask : masks) {
    std::vector<int> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<int>((mask >> i) & 1U);
    spec.generators.push_back(std::move(bits));
  }
  return spec;
}

SACGraph::SACGraph(HeubergerMatrix matrix, std::optional<GroupSpec> provenance)
    : matrix_(std::move(matrix)), provenance_(std::move(provenance)) {
  if (matrix_.rows() < 1) throw DomainError("a Heuberger matrix needs dimension m >= 1");
}

Quotient standardize(const GroupSpec& spec) {
  Quotient q = std::visit(
      overloaded{
          [](const Circulant& c) {
            if (c.n <= 0) throw DomainError("circulant modulus must be positive");
            if (c.connections.empty()) throw DomainError("circulant: empty generator list");
            std::vector<Integer> kept;
            std::set<Integer> classes;
            for (const auto& a : c.connections) {
              Integer r = mod_floor(a, c.n);
              if (r == 0) throw DomainError("circulant connection " + a.get_str() + " is 0 mod " + c.n.get_str());
              Integer cls = std::min(r, Integer(c.n - r));
              if (classes.insert(cls).second) kept.push_back(r);
            }
            IntMatrix gens(1, kept.size(), kept);
            return Quotient{IntMatrix(1, 1, {c.n}), gens};
          },
          [](const DistanceSet& d) {
            require_positive(d.distances, "distance set");
            std::set<Integer> seen(d.distances.begin(), d.distances.end());
            if (seen.size() != d.distances.size()) throw DomainError("distance set entries must be distinct");
            return Quotient{IntMatrix(1, 0), IntMatrix(1, d.distances.size(), d.distances)};
          },
          [](const CubeLike& c) {
            if (c.n < 1) throw DomainError("cube-like dimension must be >= 1");
            if (c.generators.empty()) throw DomainError("cube-like: empty generator list");
            std::set<std::vector<int>> seen;
            IntMatrix gens(c.n, c.generators.size());
            for (std::size_t j = 0; j < c.generators.size(); ++j) {
              const auto& g = c.generators[j];
              if (g.size() != c.n) throw DomainError("cube-like generator has wrong length");
              bool nonzero = false;
              for (std::size_t i = 0; i < c.n; ++i) {
                if (g[i] != 0 && g[i] != 1) throw DomainError("cube-like generator entries must be bits");
                gens(i, j) = g[i];
                nonzero |= g[i] != 0;
              }
              if (!nonzero) throw DomainError("cube-like generators must be nonzero");
              if (!seen.insert(g).second) throw DomainError("cube-like generators must be distinct");
            }
            IntMatrix rel(c.n, c.n);
            for (std::size_t i = 0; i < c.n; ++i) rel(i, i) = 2;
            return Quotient{rel, gens};
          },
          [](const Quotient& q) {
            const std::size_t k = q.generator_images.rows();
            if (q.generator_images.cols() == 0) throw DomainError("quotient: empty generator list");
            if (q.relations.rows() != k) throw DimensionError("quotient: relations and generators differ in rows");
            LatticeReducer rel(q.relations);
            std::set<Vector> classes;
            std::vector<Vector> kept;
            for (std::size_t j = 0; j < q.generator_images.cols(); ++j) {
              Vector g = q.generator_images.column(j);
              Vector neg(g.size());
              for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
              Vector a = rel.reduce(g), b = rel.reduce(neg);
              if (classes.count(a) || classes.count(b)) continue;
              classes.insert(a);
              kept.push_back(g);
            }
            return Quotient{q.relations, IntMatrix::from_columns(kept, k)};
          },
      },
      spec);

  Integer index = lattice_index(hconcat(q.generator_images, q.relations));
  if (index != 1) {
    std::string what = index == 0 ? std::string("generators do not generate the group (infinite index)")
                                  : "generators do not generate the group (index " + index.get_str() + ")";
    throw GenerationError(what, index);
  }
  return q;
}

SACGraph from_group_spec(const GroupSpec& spec) {
  Quotient q = standardize(spec);
  return SACGraph(kernel_mod_lattice(q.generator_images, q.relations), spec);
}

HeubergerMatrix distance_to_matrix(const std::vector<Integer>& a) {
  require_positive(a, "distance_to_matrix");
  if (a.size() < 2) throw DomainError("distance_to_matrix needs at least two distances");
  Integer g = gcd_vec(a);
  if (g != 1) throw DomainError("distance_to_matrix: gcd(" + join(a) + ") = " + g.get_str() + ", expected 1");
  if (a.size() == 2) return IntMatrix(2, 1, {Integer(-a[1]), a[0]});
  return distance_formula(a);
}

HeubergerMatrix circulant_to_matrix(const Integer& n, const std::vector<Integer>& connections) {
  if (n <= 0) throw DomainError("circulant modulus must be positive");
  require_positive(connections, "circulant_to_matrix");
  std::vector<Integer> a = connections;
  a.push_back(n);
  Integer g = gcd_vec(a);
  if (g != 1)
    throw DomainError("circulant_to_matrix: gcd(" + join(connections) + ", " + n.get_str() + ") = " + g.get_str() +
                      "; the graph is disconnected");
  return distance_formula(a).without_row(a.size() - 1);
}

DistanceCheck check_distance(const HeubergerMatrix& m) {
  DistanceCheck out;
  out.cross = cross_product(m);
  out.gcd = gcd_vec(out.cross);
  if (out.gcd == 0) {
    out.failure = "v = 0";
  } else if (out.gcd != 1) {
    out.failure = "gcd(v) = " + out.gcd.get_str();
  } else {
    std::vector<Integer> d;
    for (const auto& x : out.cross) d.push_back(abs(x));
    out.distances = std::move(d);
  }
  return out;
}

std::optional<std::vector<Integer>> matrix_to_distance(const HeubergerMatrix& m) { return check_distance(m).distances; }

CirculantCheck check_circulant(const HeubergerMatrix& m, DeleteColumn which) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_to_circulant needs a square matrix");
  CirculantCheck out;
  if (m.rows() == 0) {
    out.det = 1;
    out.failure = "empty matrix";
    return out;
  }
  out.det = det(m);
  std::size_t drop = which == DeleteColumn::First ? 0 : m.cols() - 1;
  out.cross = cross_product(m.without_column(drop));
  const Integer n = abs(out.det);
  // gcd(n, gcd(v)) = 1 already forces gcd(v) = 1.
  Integer partial = n;
  for (const auto& x : out.cross) partial = gcd(partial, x);
  out.gcd = partial == 1 ? Integer(1) : gcd_vec(out.cross);
  if (out.det == 0) {
    out.failure = "det = 0";
  } else if (out.gcd == 0) {
    out.failure = "v = 0";
  } else if (out.gcd != 1) {
    out.failure = "gcd(v) = " + out.gcd.get_str();
  } else {
    CirculantDescription c{n, {}};
    for (const auto& x : out.cross) c.connections.push_back(abs(x));
    out.circulant = std::move(c);
  }
  return out;
}

std::optional<CirculantDescription> matrix_to_circulant(const HeubergerMatrix& m, DeleteColumn which) {
  return check_circulant(m, which).circulant;
}

GeneratorImages identity_images(std::size_t m) {
  GeneratorImages images(m);
  for (std::size_t i = 0; i < m; ++i) images[i] = {i, 1};
  return images;
}

std::string_view op_name(const StructuralOp& op) {
  return std::visit(overloaded{
                        [](const PermuteColumns&) { return std::string_view("permute_columns"); },
                        [](const NegateColumn&) { return std::string_view("negate_column"); },
                        [](const AddColumnMultiple&) { return std::string_view("add_column_multiple"); },
                        [](const DeleteRedundantColumn&) { return std::string_view("delete_redundant_column"); },
                        [](const PermuteRows&) { return std::string_view("permute_rows"); },
                        [](const NegateRows&) { return std::string_view("negate_rows"); },
                        [](const DeleteZeroRow&) { return std::string_view("delete_zero_row"); },
                        [](const ExtractBlock&) { return std::string_view("extract_block"); },
                    },
                    op);
}

HeubergerMatrix apply_structural(const HeubergerMatrix& m, const StructuralOp& op) {
  return std::visit(
      overloaded{
          [&](const PermuteColumns& p) {
            if (!is_permutation_of_range(p.order, m.cols())) throw DomainError("permute_columns: not a permutation");
            IntMatrix out(m.rows(), m.cols());
            for (std::size_t k = 0; k < m.cols(); ++k) out.set_column(k, m.column(p.order[k]));
            return out;
          },
          [&](const NegateColumn& n) {
            check_column(m, n.col);
            IntMatrix out = m;
            out.negate_column(n.col);
            return out;
          },
          [&](const AddColumnMultiple& a) {
            check_column(m, a.target);
            check_column(m, a.source);
            if (a.target == a.source) throw DomainError("add_column_multiple: source and target coincide");
            IntMatrix out = m;
            out.add_column_multiple(a.target, a.source, a.factor);
            return out;
          },
          [&](const DeleteRedundantColumn& d) {
            check_column(m, d.col);
            IntMatrix rest = m.without_column(d.col);
            if (d.witness.size() != rest.cols() || rest * d.witness != m.column(d.col))
              throw DomainError("delete_redundant_column: witness does not express column " +
                                std::to_string(d.col) + " over the others");
            return rest;
          },
          [&](const PermuteRows& p) {
            if (!is_permutation_of_range(p.order, m.rows())) throw DomainError("permute_rows: not a permutation");
            IntMatrix out(m.rows(), m.cols());
            for (std::size_t k = 0; k < m.rows(); ++k)
              for (std::size_t j = 0; j < m.cols(); ++j) out(k, j) = m(p.order[k], j);
            return out;
          },
          [&](const NegateRows& n) {
            IntMatrix out = m;
            std::set<std::size_t> seen;
            for (std::size_t i : n.rows) {
              if (i >= m.rows() || !seen.insert(i).second) throw DomainError("negate_rows: bad row index");
              out.negate_row(i);
            }
            return out;
          },
          [&](const DeleteZeroRow& d) {
            if (d.row >= m.rows()) throw DomainError("delete_zero_row: row index out of range");
            if (m.rows() < 2) throw DomainError("delete_zero_row needs dimension >= 2");
            if (!m.row_is_zero(d.row)) throw DomainError("delete_zero_row: row " + std::to_string(d.row) + " is nonzero");
            return m.without_row(d.row);
          },
          [&](const ExtractBlock& b) {
            std::vector<bool> in_row(m.rows(), false), in_col(m.cols(), false);
            for (std::size_t i : b.rows) {
              if (i >= m.rows()) throw DomainError("extract_block: row index out of range");
              in_row[i] = true;
            }
            for (std::size_t j : b.cols) {
              check_column(m, j);
              in_col[j] = true;
            }
            if (b.rows.empty()) throw DomainError("extract_block: empty row set");
            for (std::size_t i = 0; i < m.rows(); ++i)
              for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0 && in_row[i] != in_col[j])
                  throw DomainError("extract_block: rows and columns do not form a direct summand");
            IntMatrix out(b.rows.size(), b.cols.size());
            for (std::size_t i = 0; i < b.rows.size(); ++i)
              for (std::size_t j = 0; j < b.cols.size(); ++j) out(i, j) = m(b.rows[i], b.cols[j]);
            return out;
          },
      },
      op);
}

std::optional<GeneratorImages> structural_images(const HeubergerMatrix& m, const StructuralOp& op) {
  return std::visit(overloaded{
                        [&](const PermuteRows& p) -> std::optional<GeneratorImages> {
                          GeneratorImages images(m.rows());
                          for (std::size_t k = 0; k < p.order.size(); ++k) images[p.order[k]] = {k, 1};
                          return images;
                        },
                        [&](const NegateRows& n) -> std::optional<GeneratorImages> {
                          GeneratorImages images = identity_images(m.rows());
                          for (std::size_t i : n.rows) images[i].sign = -1;
                          return images;
                        },
                        [](const DeleteZeroRow&) -> std::optional<GeneratorImages> { return std::nullopt; },
                        [](const ExtractBlock&) -> std::optional<GeneratorImages> { return std::nullopt; },
                        [&](const auto&) -> std::optional<GeneratorImages> { return identity_images(m.rows()); },
                    },
                    op);
}

StructuralResult apply_structural(const SACGraph& g, const StructuralOp& op) {
  HeubergerMatrix target = apply_structural(g.matrix(), op);
  return StructuralResult{SACGraph(target), StructuralStep{op, g.matrix(), target}};
}

StructuralResult permute_columns(const SACGraph& g, std::vector<std::size_t> order) {
  return apply_structural(g, PermuteColumns{std::move(order)});
}

StructuralResult negate_column(const SACGraph& g, std::size_t col) { return apply_structural(g, NegateColumn{col}); }

StructuralResult add_column_multiple(const SACGraph& g, std::size_t target, std::size_t source,
                                     const Integer& factor) {
  return apply_structural(g, AddColumnMultiple{target, source, factor});
}

StructuralResult delete_redundant_column(const SACGraph& g, std::size_t col) {
  check_column(g.matrix(), col);
  auto witness = lattice_membership(g.matrix().without_column(col), g.matrix().column(col));
  if (!witness)
    throw DomainError("delete_redundant_column: column " + std::to_string(col) + " is not in the span of the others");
  return apply_structural(g, DeleteRedundantColumn{col, *witness});
}

StructuralResult permute_rows(const SACGraph& g, std::vector<std::size_t> order) {
  return apply_structural(g, PermuteRows{std::move(order)});
}

StructuralResult negate_rows(const SACGraph& g, std::vector<std::size_t> rows) {
  return apply_structural(g, NegateRows{std::move(rows)});
}

StructuralResult delete_zero_row(const SACGraph& g, std::size_t row) { return apply_structural(g, DeleteZeroRow{row}); }

std::vector<StructuralResult> block_split(const SACGraph& g) {
  const IntMatrix& m = g.matrix();
  std::vector<std::size_t> parent(m.rows());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, j) == 0) continue;
      if (!first) {
        first = i;
      } else {
        std::size_t a = find(*first), b = find(i);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<ExtractBlock> blocks;
  std::vector<std::size_t> block_of_root(m.rows(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t root = find(i);
    if (block_of_root[root] == m.rows()) {
      block_of_root[root] = blocks.size();
      blocks.push_back({});
    }
    blocks[block_of_root[root]].rows.push_back(i);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) {
        blocks[block_of_root[find(i)]].cols.push_back(j);
        break;
      }
  }
  std::vector<StructuralResult> out;
  out.reserve(blocks.size());
  for (auto& b : blocks) out.push_back(apply_structural(g, StructuralOp{std::move(b)}));
  return out;
}

std::optional<std::size_t> loop_generator(const SACGraph& g) {
  LatticeReducer reducer(g.matrix());
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    Vector e(g.dimension());
    e[i] = 1;
    if (reducer.contains(e)) return i;
  }
  return std::nullopt;
}

bool has_loops(const SACGraph& g) { return loop_generator(g).has_value(); }

Vector canonicalize_vertex(const Vector& v, const SACGraph& g) {
  if (v.size() != g.dimension()) throw DimensionError("vertex has the wrong dimension");
  return LatticeReducer(g.matrix()).reduce(v);
}

HeubergerMatrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  std::vector<Vector> rows;

  auto parse_count = [&](const std::string& tok) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("line " + std::to_string(line_no) + ": expected a nonnegative count, got '" + tok + "'");
    return static_cast<std::size_t>(std::stoull(tok));
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (!shape) {
      if (tokens.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": header must be 'm r'");
      shape = std::pair{parse_count(tokens[0]), parse_count(tokens[1])};
      if (shape->first == 0) throw ParseError("line " + std::to_string(line_no) + ": dimension m must be >= 1");
      continue;
    }
    if (rows.size() == shape->first || shape->second == 0)
      throw ParseError("line " + std::to_string(line_no) + ": more rows than declared");
    if (tokens.size() != shape->second)
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(shape->second) +
                       " entries, got " + std::to_string(tokens.size()));
    Vector row;
    for (const auto& tok : tokens) {
      Integer x;
      const char* s = tok.c_str();
      bool ok = !tok.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) ||
                                 ((s[0] == '-' || s[0] == '+') && tok.size() > 1));
      if (ok) ok = x.set_str(s[0] == '+' ? s + 1 : s, 10) == 0;
      if (!ok) throw ParseError("line " + std::to_string(line_no) + ": '" + tok + "' is not an integer");
      row.push_back(std::move(x));
    }
    rows.push_back(std::move(row));
  }
  if (!shape) throw ParseError("empty matrix file");
  if (shape->second == 0) return IntMatrix(shape->first, 0);
  if (rows.size() != shape->first)
    throw ParseError("expected " + std::to_string(shape->first) + " rows, got " + std::to_string(rows.size()));
  return IntMatrix::from_rows(rows, shape->second);
}

HeubergerMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

std::string format_matrix(const HeubergerMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  if (m.cols() == 0) return os.str();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace heuberger
