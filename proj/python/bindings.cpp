#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heuberger/payan.hpp"
#include "heuberger/serialize.hpp"

namespace py = pybind11;
using namespace heuberger;

namespace {

// Python ints pass through decimal strings so entries keep full precision.
Integer to_integer(const py::handle& x) {
  if (!py::isinstance<py::int_>(x)) throw py::type_error("expected an int");
  return Integer(py::str(x).cast<std::string>());
}

py::int_ to_py(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

std::vector<Integer> to_integers(const py::sequence& xs) {
  std::vector<Integer> out;
  for (auto x : xs) out.push_back(to_integer(x));
  return out;
}

py::list to_py(const Vector& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

/// Rows as a list of lists; `cols` is needed for m x 0 matrices.
IntMatrix to_matrix(const py::sequence& rows, std::optional<std::size_t> cols) {
  std::vector<Vector> data;
  for (auto row : rows) data.push_back(to_integers(row.cast<py::sequence>()));
  std::size_t c = cols.value_or(data.empty() ? 0 : data[0].size());
  for (const auto& r : data)
    if (r.size() != c) throw DimensionError("rows have different lengths");
  return IntMatrix::from_rows(data, c);
}

py::list to_py(const IntMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.append(to_py(m.row(i)));
  return rows;
}

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

CubeLike cube_like(std::size_t n, const std::vector<std::uint64_t>& masks) { return CubeLike::from_masks(n, masks); }

}  // namespace

PYBIND11_MODULE(_heuberger, m) {
  m.doc() = "Chromatic numbers of abelian Cayley graphs through Heuberger matrices";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  m.def(
      "hnf",
      [](const py::sequence& rows, std::optional<std::size_t> cols) {
        HermiteForm f = hnf(to_matrix(rows, cols));
        return py::make_tuple(to_py(f.h), to_py(f.u), f.pivots);
      },
      py::arg("rows"), py::arg("cols") = py::none(), "Column Hermite form: returns (h, u, pivots) with a u = h.");
  m.def(
      "snf",
      [](const py::sequence& rows, std::optional<std::size_t> cols) { return to_py(snf(to_matrix(rows, cols)).diag); },
      py::arg("rows"), py::arg("cols") = py::none(), "Smith invariant factors.");
  m.def(
      "lattice_equal",
      [](const py::sequence& a, const py::sequence& b) {
        return lattice_equal(to_matrix(a, std::nullopt), to_matrix(b, std::nullopt));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "kernel",
      [](const py::sequence& images, const py::sequence& relations, std::size_t relation_count) {
        IntMatrix g = to_matrix(images, std::nullopt);
        IntMatrix r = relation_count == 0 ? IntMatrix(g.rows(), 0) : to_matrix(relations, relation_count);
        return to_py(kernel_mod_lattice(g, r));
      },
      py::arg("images"), py::arg("relations") = py::list(), py::arg("relation_count") = 0,
      "Kernel of Z^m -> Z^k / span(relations), x -> images x.");
  m.def(
      "cross_product", [](const py::sequence& rows) { return to_py(cross_product(to_matrix(rows, std::nullopt))); },
      py::arg("rows"));

  m.def(
      "distance_to_matrix",
      [](const py::sequence& distances) { return to_py(distance_to_matrix(to_integers(distances))); },
      py::arg("distances"));
  m.def(
      "circulant_to_matrix",
      [](const py::int_& n, const py::sequence& connections) {
        return to_py(circulant_to_matrix(to_integer(n), to_integers(connections)));
      },
      py::arg("n"), py::arg("connections"));
  m.def(
      "matrix_to_distance",
      [](const py::sequence& rows) -> py::object {
        auto d = matrix_to_distance(to_matrix(rows, std::nullopt));
        if (!d) return py::none();
        return to_py(Vector(d->begin(), d->end()));
      },
      py::arg("rows"));
  m.def(
      "matrix_to_circulant",
      [](const py::sequence& rows, const std::string& del) -> py::object {
        if (del != "first" && del != "last") throw DomainError("delete must be 'first' or 'last'");
        auto c = matrix_to_circulant(to_matrix(rows, std::nullopt), del == "first" ? DeleteColumn::First : DeleteColumn::Last);
        if (!c) return py::none();
        return py::make_tuple(to_py(c->n), to_py(Vector(c->connections.begin(), c->connections.end())));
      },
      py::arg("rows"), py::arg("delete") = "last");

  m.def(
      "chi_bounds",
      [](const py::sequence& rows, std::optional<std::size_t> cols) {
        return to_py(to_json(chi_upper_pipeline(SACGraph(to_matrix(rows, cols)))));
      },
      py::arg("rows"), py::arg("cols") = py::none(), "Lemma pipeline report as a dict.");
  m.def(
      "chromatic_number",
      [](const py::sequence& rows, std::optional<std::size_t> cols, std::optional<std::size_t> radius,
         std::size_t cap, std::uint64_t budget) {
        SACGraph g(to_matrix(rows, cols));
        ConcreteGraph c = radius ? ball_subgraph(g, *radius, cap) : materialize_finite(g, cap);
        py::gil_scoped_release release;
        ChromaticResult r = chromatic_number(c, budget);
        py::gil_scoped_acquire acquire;
        return to_py(to_json(r));
      },
      py::arg("rows"), py::arg("cols") = py::none(), py::arg("radius") = py::none(),
      py::arg("cap") = kDefaultVertexCap, py::arg("budget") = kDefaultSolverBudget,
      "Oracle on the whole quotient, or on a ball when radius is given.");

  m.def("qnd_matrix", [](std::size_t n) { return to_py(qnd_matrix(n)); }, py::arg("n"));
  m.def(
      "cube_like_matrix",
      [](std::size_t n, const std::vector<std::uint64_t>& masks) { return to_py(cube_like_matrix(cube_like(n, masks))); },
      py::arg("n"), py::arg("masks"));
  m.def(
      "payan_analyze",
      [](std::size_t n, const std::vector<std::uint64_t>& masks) {
        CubeLikeVerdict v = payan_analyze(cube_like(n, masks));
        py::dict out;
        out["outcome"] = outcome_name(v.outcome);
        out["z"] = v.z;
        out["column"] = v.column;
        out["witness"] = v.witness ? to_py(to_json(*v.witness)) : py::none();
        return out;
      },
      py::arg("n"), py::arg("masks"));
  m.def(
      "payan_check",
      [](std::size_t n, std::optional<std::size_t> samples, std::uint64_t seed) {
        PayanOptions opts;
        if (samples) {
          opts.mode = PayanMode::Sampled;
          opts.samples = *samples;
        }
        opts.seed = seed;
        PayanReport r = exhaustive_payan_check(n, opts);
        py::dict out;
        out["entries"] = to_py(to_json(r));
        out["chi3_count"] = r.chi3_count;
        out["inconsistent"] = r.inconsistent;
        return out;
      },
      py::arg("n"), py::arg("samples") = py::none(), py::arg("seed") = 0);
  m.def(
      "verify_chain",
      [](const py::object& doc, std::size_t samples, std::uint64_t seed) {
        std::string text = py::module_::import("json").attr("dumps")(doc).cast<std::string>();
        HomChain chain = chain_from_json(json::parse(text));
        return chain_is_sound(chain) && verify_hom_chain(chain, samples, seed);
      },
      py::arg("chain"), py::arg("samples") = 200, py::arg("seed") = 0);
}
