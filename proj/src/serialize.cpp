#include "heuberger/serialize.hpp"

namespace heuberger {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

json index_list(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

std::vector<std::size_t> index_list_from(const json& j) { return j.get<std::vector<std::size_t>>(); }

Vector vector_from_json(const json& j) {
  Vector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

json images_to_json(const GeneratorImages& images) {
  json out = json::array();
  for (const auto& img : images) out.push_back(json::array({img.index, img.sign}));
  return out;
}

GeneratorImages images_from_json(const json& j) {
  GeneratorImages out;
  for (const auto& pair : j) out.push_back({pair.at(0).get<std::size_t>(), pair.at(1).get<int>()});
  return out;
}

json structural_params(const StructuralOp& op) {
  return std::visit(overloaded{
                        [](const PermuteColumns& p) { return json{{"order", index_list(p.order)}}; },
                        [](const NegateColumn& p) { return json{{"col", p.col}}; },
                        [](const AddColumnMultiple& p) {
                          return json{{"target", p.target}, {"source", p.source}, {"factor", integer_to_json(p.factor)}};
                        },
                        [](const DeleteRedundantColumn& p) {
                          return json{{"col", p.col}, {"witness", to_json(p.witness)}};
                        },
                        [](const PermuteRows& p) { return json{{"order", index_list(p.order)}}; },
                        [](const NegateRows& p) { return json{{"rows", index_list(p.rows)}}; },
                        [](const DeleteZeroRow& p) { return json{{"row", p.row}}; },
                        [](const ExtractBlock& p) {
                          return json{{"rows", index_list(p.rows)}, {"cols", index_list(p.cols)}};
                        },
                    },
                    op);
}

json step_params(const StepKind& kind) {
  return std::visit(overloaded{
                        [](const ColumnReduce& c) { return json{{"col", c.col}, {"factor", integer_to_json(c.factor)}}; },
                        [](const CollapseTopRows&) { return json::object(); },
                        [](const AppendColumn& a) { return json{{"column", to_json(a.column)}}; },
                        [](const AppendZeroRow&) { return json::object(); },
                        [](const StructuralOp& op) { return structural_params(op); },
                        [](const GeneratorMap& g) {
                          return json{{"images", images_to_json(g.images)}, {"target", to_json(g.target)}};
                        },
                    },
                    kind);
}

StepKind step_from_json(const std::string& name, const json& p) {
  if (name == "column_reduce") return ColumnReduce{p.at("col").get<std::size_t>(), integer_from_json(p.at("factor"))};
  if (name == "collapse_top_rows") return CollapseTopRows{};
  if (name == "append_column") return AppendColumn{vector_from_json(p.at("column"))};
  if (name == "append_zero_row") return AppendZeroRow{};
  if (name == "generator_map")
    return GeneratorMap{images_from_json(p.at("images")), matrix_from_json(p.at("target"))};
  if (name == "permute_columns") return StructuralOp{PermuteColumns{index_list_from(p.at("order"))}};
  if (name == "negate_column") return StructuralOp{NegateColumn{p.at("col").get<std::size_t>()}};
  if (name == "add_column_multiple")
    return StructuralOp{AddColumnMultiple{p.at("target").get<std::size_t>(), p.at("source").get<std::size_t>(),
                                          integer_from_json(p.at("factor"))}};
  if (name == "delete_redundant_column")
    return StructuralOp{DeleteRedundantColumn{p.at("col").get<std::size_t>(), vector_from_json(p.at("witness"))}};
  if (name == "permute_rows") return StructuralOp{PermuteRows{index_list_from(p.at("order"))}};
  if (name == "negate_rows") return StructuralOp{NegateRows{index_list_from(p.at("rows"))}};
  if (name == "delete_zero_row") return StructuralOp{DeleteZeroRow{p.at("row").get<std::size_t>()}};
  if (name == "extract_block")
    return StructuralOp{ExtractBlock{index_list_from(p.at("rows")), index_list_from(p.at("cols"))}};
  throw ParseError("unknown step kind '" + name + "'");
}

json bound_to_json(const std::optional<BoundCertificate>& b) {
  if (!b) return nullptr;
  json chains = json::array();
  for (const auto& c : b->chains) chains.push_back(to_json(c));
  return json{{"value", b->value},
              {"rule", b->rule},
              {"chains", chains},
              {"odd_walk", b->odd_walk ? to_json(*b->odd_walk) : json(nullptr)}};
}

}  // namespace

json integer_to_json(const Integer& x) {
  if (fits_int64(x)) return to_int64(x);
  return x.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError("not an integer: " + j.get<std::string>());
    return x;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IntMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const json& entries = j.at("entries");
  if (entries.size() != rows) throw ParseError("matrix document: row count mismatch");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols) throw ParseError("matrix document: column count mismatch");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = integer_from_json(entries[i][k]);
  }
  return m;
}

json to_json(const StructuralStep& step) {
  return json{{"kind", std::string(op_name(step.op))},
              {"params", structural_params(step.op)},
              {"source", to_json(step.source)},
              {"target", to_json(step.target)}};
}

json to_json(const HomStep& step) {
  return json{{"kind", step_name(step.kind)},
              {"params", step_params(step.kind)},
              {"source", to_json(step.source)},
              {"target", to_json(step.target)},
              {"images", step.images ? images_to_json(*step.images) : json(nullptr)}};
}

json to_json(const HomChain& chain) {
  json steps = json::array();
  for (const auto& s : chain.steps) steps.push_back(to_json(s));
  return json{{"start", to_json(chain.start)}, {"steps", steps}, {"end", to_json(chain.target())}};
}

HomChain chain_from_json(const json& j) {
  HomChain chain(matrix_from_json(j.at("start")));
  for (const auto& s : j.at("steps")) {
    HomStep step{step_from_json(s.at("kind").get<std::string>(), s.at("params")), matrix_from_json(s.at("source")),
                 matrix_from_json(s.at("target")), std::nullopt};
    if (!s.at("images").is_null()) step.images = images_from_json(s.at("images"));
    chain.steps.push_back(std::move(step));
  }
  return chain;
}

json to_json(const ChiReport& report) {
  json reductions = json::array();
  for (const auto& r : report.reductions) reductions.push_back(to_json(r));
  return json{{"loops", report.loops},
              {"loop_generator", report.loop_generator ? json(*report.loop_generator) : json(nullptr)},
              {"reductions", reductions},
              {"lower", bound_to_json(report.lower)},
              {"upper", bound_to_json(report.upper)},
              {"exact", report.exact}};
}

json to_json(const ChromaticResult& result) {
  std::string status = result.status == ChromaticStatus::Exact       ? "exact"
                       : result.status == ChromaticStatus::Bracket   ? "bracket"
                                                                     : "uncolorable";
  return json{{"status", status},
              {"lower", result.lower},
              {"upper", result.upper},
              {"nodes", result.nodes},
              {"coloring", result.coloring.colors}};
}

json to_json(const PayanEntry& entry) {
  return json{{"spec", json{{"n", entry.n}, {"generators", entry.generators}}},
              {"verdict", outcome_name(entry.outcome)},
              {"chi_exact", entry.chi},
              {"witness_summary", entry.witness_summary()}};
}

json to_json(const PayanReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) entries.push_back(to_json(e));
  return entries;
}

}  // namespace heuberger
