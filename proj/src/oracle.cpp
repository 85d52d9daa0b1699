#include "heuberger/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <tuple>

namespace heuberger {

std::size_t ConcreteGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : adjacency) twice += nb.size();
  std::size_t loop_count = 0;
  for (bool l : loops) loop_count += l ? 1 : 0;
  return twice / 2 + loop_count;
}

bool ConcreteGraph::has_loops() const { return std::find(loops.begin(), loops.end(), true) != loops.end(); }

namespace {

void finish_adjacency(ConcreteGraph& g) {
  for (auto& nb : g.adjacency) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
}

}  // namespace

ConcreteGraph materialize_finite(const SACGraph& g, std::size_t cap) {
  const IntMatrix& m = g.matrix();
  const std::size_t dim = m.rows();
  HermiteForm hf = hnf(m);
  if (hf.rank() < dim)
    throw DomainError("materialize_finite: infinite quotient (lattice rank " + std::to_string(hf.rank()) +
                      " < dimension " + std::to_string(dim) + ")");
  Integer count = 1;
  for (std::size_t k = 0; k < dim; ++k) count *= hf.h(k, k);
  if (count > cap) throw CapExceeded("materialize_finite: " + count.get_str() + " vertices exceeds cap " +
                                     std::to_string(cap));
  const std::size_t n = count.get_ui();

  SmithForm sf = snf(m);
  std::vector<std::int64_t> d(dim), stride(dim), box(dim);
  std::vector<std::vector<std::int64_t>> urow(dim, std::vector<std::int64_t>(dim));
  std::int64_t s = 1;
  for (std::size_t i = dim; i-- > 0;) {
    d[i] = to_int64(sf.diag[i]);
    stride[i] = s;
    s *= d[i];
    for (std::size_t j = 0; j < dim; ++j) urow[i][j] = to_int64(mod_floor(sf.u(i, j), sf.diag[i]));
  }
  for (std::size_t i = 0; i < dim; ++i) box[i] = to_int64(hf.h(i, i));

  ConcreteGraph out;
  out.adjacency.resize(n);
  out.loops.assign(n, false);
  out.labels.reserve(n);
  out.moduli = Vector(sf.diag.begin(), sf.diag.begin() + static_cast<std::ptrdiff_t>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    Vector img(dim);
    for (std::size_t k = 0; k < dim; ++k) img[k] = urow[k][i];
    out.generator_images.push_back(std::move(img));
  }

  // Smith coordinates of every box representative, in lexicographic order.
  std::vector<std::int64_t> coords(n * dim);
  std::vector<std::size_t> id_of(n);
  std::vector<std::int64_t> x(dim, 0);
  for (std::size_t v = 0; v < n; ++v) {
    Vector label(dim);
    for (std::size_t i = 0; i < dim; ++i) label[i] = x[i];
    out.labels.push_back(std::move(label));
    std::int64_t index = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < dim; ++j) acc += static_cast<__int128>(urow[i][j]) * x[j];
      std::int64_t c = static_cast<std::int64_t>(acc % d[i]);
      coords[v * dim + i] = c;
      index += c * stride[i];
    }
    id_of[static_cast<std::size_t>(index)] = v;
    for (std::size_t i = dim; i-- > 0;) {
      if (++x[i] < box[i]) break;
      x[i] = 0;
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t gen = 0; gen < dim; ++gen) {
      for (int sign : {1, -1}) {
        std::int64_t index = 0;
        for (std::size_t i = 0; i < dim; ++i) {
          std::int64_t c = coords[v * dim + i] + sign * urow[i][gen];
          c %= d[i];
          if (c < 0) c += d[i];
          index += c * stride[i];
        }
        std::size_t w = id_of[static_cast<std::size_t>(index)];
        if (w == v)
          out.loops[v] = true;
        else
          out.adjacency[v].push_back(w);
      }
    }
  }
  finish_adjacency(out);
  return out;
}

ConcreteGraph ball_subgraph(const SACGraph& g, std::size_t radius, std::size_t cap) {
  const std::size_t dim = g.dimension();
  LatticeReducer reducer(g.matrix());
  std::map<Vector, std::size_t> found;
  std::vector<Vector> reps;
  std::vector<std::size_t> dist;
  std::deque<std::size_t> queue;

  auto visit = [&](Vector v, std::size_t d) {
    if (found.count(v)) return;
    if (reps.size() >= cap)
      throw CapExceeded("ball_subgraph: more than " + std::to_string(cap) + " vertices within radius " +
                        std::to_string(radius));
    found.emplace(v, reps.size());
    reps.push_back(std::move(v));
    dist.push_back(d);
    queue.push_back(reps.size() - 1);
  };
  visit(reducer.reduce(Vector(dim)), 0);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    if (dist[v] >= radius) continue;
    for (std::size_t i = 0; i < dim; ++i) {
      for (int sign : {1, -1}) {
        Vector w = reps[v];
        w[i] += sign;
        visit(reducer.reduce(std::move(w)), dist[v] + 1);
      }
    }
  }

  std::vector<std::size_t> order(reps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(dist[a], reps[a]) < std::tie(dist[b], reps[b]);
  });
  std::vector<std::size_t> id(reps.size());
  for (std::size_t k = 0; k < order.size(); ++k) id[order[k]] = k;

  ConcreteGraph out;
  const std::size_t n = reps.size();
  out.adjacency.resize(n);
  out.loops.assign(n, false);
  out.labels.resize(n);
  for (std::size_t i = 0; i < dim; ++i) {
    Vector e(dim);
    e[i] = 1;
    out.generator_images.push_back(std::move(e));
  }
  for (std::size_t old = 0; old < n; ++old) {
    const std::size_t v = id[old];
    out.labels[v] = reps[old];
    for (std::size_t i = 0; i < dim; ++i) {
      for (int sign : {1, -1}) {
        Vector w = reps[old];
        w[i] += sign;
        auto it = found.find(reducer.reduce(std::move(w)));
        if (it == found.end()) continue;
        const std::size_t u = id[it->second];
        if (u == v)
          out.loops[v] = true;
        else
          out.adjacency[v].push_back(u);
      }
    }
  }
  finish_adjacency(out);
  return out;
}

ConcreteGraph graph_from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  ConcreteGraph out;
  out.adjacency.resize(n);
  out.loops.assign(n, false);
  out.labels.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.labels[v] = Vector{Integer(static_cast<unsigned long>(v))};
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw DimensionError("graph_from_edges: vertex index out of range");
    if (a == b) {
      out.loops[a] = true;
      continue;
    }
    out.adjacency[a].push_back(b);
    out.adjacency[b].push_back(a);
  }
  finish_adjacency(out);
  return out;
}

bool check_coloring(const ConcreteGraph& g, const Coloring& c) {
  if (c.colors.size() != g.vertex_count())
    throw DimensionError("check_coloring: " + std::to_string(c.colors.size()) + " colors for " +
                         std::to_string(g.vertex_count()) + " vertices");
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.loops[v]) return false;
    if (c.colors[v] < 0 || (c.palette > 0 && c.colors[v] >= c.palette)) return false;
    for (std::size_t u : g.adjacency[v])
      if (c.colors[u] == c.colors[v]) return false;
  }
  return true;
}

namespace {

std::optional<std::vector<int>> two_coloring(const ConcreteGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> side(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      if (g.loops[v]) return std::nullopt;
      for (std::size_t u : g.adjacency[v]) {
        if (side[u] < 0) {
          side[u] = 1 - side[v];
          queue.push_back(u);
        } else if (side[u] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

std::vector<std::size_t> greedy_clique(const ConcreteGraph& g) {
  std::vector<std::size_t> best;
  auto adjacent = [&](std::size_t a, std::size_t b) {
    return std::binary_search(g.adjacency[a].begin(), g.adjacency[a].end(), b);
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.adjacency[v].size() + 1 <= best.size()) continue;
    std::vector<std::size_t> clique{v};
    for (std::size_t u : g.adjacency[v]) {
      bool all = true;
      for (std::size_t w : clique)
        if (w != v && !adjacent(u, w)) {
          all = false;
          break;
        }
      if (all) clique.push_back(u);
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  return best;
}

// DSATUR state: colors, per-vertex neighbor color counts, and an ordered set
// keyed by (saturation desc, degree desc, index asc) over uncolored vertices.
class Dsatur {
 public:
  Dsatur(const ConcreteGraph& g, int k)
      : g_(g), k_(k), color_(g.vertex_count(), -1), count_(g.vertex_count() * static_cast<std::size_t>(k), 0),
        sat_(g.vertex_count(), 0) {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) queue_.insert(key(v));
  }

  bool done() const { return queue_.empty(); }
  std::size_t next() const { return std::get<2>(*queue_.begin()); }
  bool allowed(std::size_t v, int c) const { return count_[v * k_ + c] == 0; }
  int color(std::size_t v) const { return color_[v]; }
  const std::vector<int>& colors() const { return color_; }

  void assign(std::size_t v, int c) {
    queue_.erase(key(v));
    color_[v] = c;
    for (std::size_t u : g_.adjacency[v]) {
      if (color_[u] >= 0) {
        ++count_[u * k_ + c];
        continue;
      }
      if (count_[u * k_ + c]++ == 0) {
        queue_.erase(key(u));
        ++sat_[u];
        queue_.insert(key(u));
      }
    }
  }

  void unassign(std::size_t v) {
    const int c = color_[v];
    color_[v] = -1;
    for (std::size_t u : g_.adjacency[v]) {
      if (color_[u] >= 0) {
        --count_[u * k_ + c];
        continue;
      }
      if (--count_[u * k_ + c] == 0) {
        queue_.erase(key(u));
        --sat_[u];
        queue_.insert(key(u));
      }
    }
    queue_.insert(key(v));
  }

 private:
  using Key = std::tuple<std::ptrdiff_t, std::ptrdiff_t, std::size_t>;
  Key key(std::size_t v) const {
    return {-static_cast<std::ptrdiff_t>(sat_[v]), -static_cast<std::ptrdiff_t>(g_.adjacency[v].size()), v};
  }

  const ConcreteGraph& g_;
  std::size_t k_;
  std::vector<int> color_;
  std::vector<std::uint32_t> count_;
  std::vector<std::size_t> sat_;
  std::set<Key> queue_;
};

std::vector<int> dsatur_greedy(const ConcreteGraph& g) {
  const int k = static_cast<int>(
      std::max_element(g.adjacency.begin(), g.adjacency.end(),
                       [](const auto& a, const auto& b) { return a.size() < b.size(); })
          ->size() +
      1);
  Dsatur state(g, k);
  while (!state.done()) {
    std::size_t v = state.next();
    int c = 0;
    while (!state.allowed(v, c)) ++c;
    state.assign(v, c);
  }
  return state.colors();
}

enum class Search { Colorable, NotColorable, OutOfBudget };

Search dsatur_search(const ConcreteGraph& g, int k, std::uint64_t budget, std::uint64_t& nodes,
                     std::vector<int>& result) {
  struct Frame {
    std::size_t v;
    int next;
    int max_before;
    bool assigned;
  };
  Dsatur state(g, k);
  std::vector<Frame> stack;
  stack.push_back({state.next(), 0, -1, false});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.assigned) {
      state.unassign(f.v);
      f.assigned = false;
    }
    const int limit = std::min(k - 1, f.max_before + 1);
    int c = f.next;
    while (c <= limit && !state.allowed(f.v, c)) ++c;
    if (c > limit) {
      stack.pop_back();
      continue;
    }
    if (++nodes > budget) return Search::OutOfBudget;
    state.assign(f.v, c);
    f.assigned = true;
    f.next = c + 1;
    const int max_now = std::max(f.max_before, c);
    if (state.done()) {
      result = state.colors();
      return Search::Colorable;
    }
    stack.push_back({state.next(), 0, max_now, false});
  }
  return Search::NotColorable;
}

int palette_of(const std::vector<int>& colors) {
  int p = 0;
  for (int c : colors) p = std::max(p, c + 1);
  return p;
}

}  // namespace

bool is_bipartite_concrete(const ConcreteGraph& g) { return two_coloring(g).has_value(); }

ChromaticResult chromatic_number(const ConcreteGraph& g, std::uint64_t budget) {
  ChromaticResult out;
  const std::size_t n = g.vertex_count();
  if (g.has_loops()) {
    out.status = ChromaticStatus::Uncolorable;
    return out;
  }
  if (n == 0) return out;

  out.clique = greedy_clique(g);
  out.lower = static_cast<int>(out.clique.size());
  if (out.lower < 3 && !is_bipartite_concrete(g)) out.lower = 3;

  std::vector<int> colors = dsatur_greedy(g);
  out.upper = palette_of(colors);
  while (out.lower < out.upper) {
    std::vector<int> better;
    Search s = dsatur_search(g, out.upper - 1, budget, out.nodes, better);
    if (s == Search::Colorable) {
      colors = std::move(better);
      out.upper = palette_of(colors);
    } else if (s == Search::NotColorable) {
      out.lower = out.upper;
    } else {
      out.status = ChromaticStatus::Bracket;
      break;
    }
  }
  out.coloring = Coloring{std::move(colors), out.upper};
  return out;
}

namespace {

Vector map_vector(const Vector& x, const GeneratorImages& images, std::size_t target_dim) {
  Vector y(target_dim);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (images[i].sign > 0)
      y[images[i].index] += x[i];
    else
      y[images[i].index] -= x[i];
  }
  return y;
}

bool step_preserves_adjacency(const HomStep& step, std::size_t samples, std::mt19937_64& rng) {
  const IntMatrix& src = step.source;
  const IntMatrix& dst = step.target;
  const GeneratorImages& images = *step.images;
  if (images.size() != src.rows()) return false;
  for (const auto& img : images)
    if (img.index >= dst.rows() || (img.sign != 1 && img.sign != -1)) return false;

  LatticeReducer target(dst);
  std::uniform_int_distribution<int> coord(-3, 3), coeff(-2, 2);

  // Every relation column must land in the target lattice.
  for (std::size_t j = 0; j < src.cols(); ++j)
    if (!target.contains(map_vector(src.column(j), images, dst.rows()))) return false;

  for (std::size_t s = 0; s < samples; ++s) {
    Vector x(src.rows());
    for (auto& xi : x) xi = coord(rng);
    Vector h(src.rows());
    for (std::size_t j = 0; j < src.cols(); ++j) {
      Integer c = coeff(rng);
      for (std::size_t i = 0; i < src.rows(); ++i) h[i] += c * src(i, j);
    }
    Vector xh = x;
    for (std::size_t i = 0; i < x.size(); ++i) xh[i] += h[i];
    const Vector cx = target.reduce(map_vector(x, images, dst.rows()));
    if (cx != target.reduce(map_vector(xh, images, dst.rows()))) return false;

    for (std::size_t i = 0; i < src.rows(); ++i) {
      for (int sign : {1, -1}) {
        Vector nb = x;
        nb[i] += sign;
        const Vector cy = target.reduce(map_vector(nb, images, dst.rows()));
        bool adjacent = false;
        for (std::size_t k = 0; k < dst.rows() && !adjacent; ++k) {
          for (int t : {1, -1}) {
            Vector probe = cx;
            probe[k] += t;
            if (target.reduce(std::move(probe)) == cy) {
              adjacent = true;
              break;
            }
          }
        }
        if (!adjacent) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool verify_hom_chain(const HomChain& chain, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const HeubergerMatrix* prev = &chain.start;
  for (const auto& step : chain.steps) {
    if (!(step.source == *prev)) return false;
    prev = &step.target;
    if (!step.images) {
      try {
        if (!(apply_step(step.source, step.kind) == step.target)) return false;
      } catch (const Error&) {
        return false;
      }
      continue;
    }
    if (!step_preserves_adjacency(step, samples, rng)) return false;
  }
  return true;
}

void write_edge_list(std::ostream& out, const ConcreteGraph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.loops[v]) out << v << ' ' << v << '\n';
    for (std::size_t u : g.adjacency[v])
      if (v < u) out << v << ' ' << u << '\n';
  }
}

}  // namespace heuberger
