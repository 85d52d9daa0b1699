#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "heuberger/serialize.hpp"

namespace heuberger::cli {

namespace {

HeubergerMatrix read_matrix(const std::string& path) {
  if (path == "-") return parse_matrix(std::cin);
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_matrix(in);
}

Integer parse_integer(const std::string& s) {
  Integer x;
  if (s.empty() || x.set_str(s, 10) != 0) throw ParseError("not an integer: '" + s + "'");
  return x;
}

std::string join(const std::vector<Integer>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].get_str();
  }
  return s;
}

void render_chain(std::ostream& out, const HomChain& chain) {
  out << "    start " << chain.start << '\n';
  for (const auto& step : chain.steps) out << "    " << step_name(step.kind) << " -> " << step.target << '\n';
}

void render_bound(std::ostream& out, const char* label, const std::optional<BoundCertificate>& b) {
  if (!b) {
    out << label << ": none\n";
    return;
  }
  out << label << ": " << b->value << " (" << b->rule << ")\n";
  if (b->odd_walk) {
    out << "    odd closed walk:";
    for (const auto& x : *b->odd_walk) out << ' ' << x;
    out << '\n';
  }
  for (const auto& chain : b->chains) render_chain(out, chain);
}

json bound_summary(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::size_t default_radius(const HeubergerMatrix& m) {
  Integer best = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += abs(m(i, j));
    best = std::max(best, s);
  }
  return best.get_ui();
}

Analysis analyze_matrix(const HeubergerMatrix& m, const Options& opts, bool oracle_only) {
  Analysis a;
  a.matrix = m;
  SACGraph g(m);
  a.bipartite = bipartite_test(m);
  if (!oracle_only) {
    a.report = chi_upper_pipeline(g, PipelineOptions{opts.sign_search_limit});
    if (a.report->loops) {
      a.loops = true;
      return a;
    }
    if (a.report->lower) a.lower = a.report->lower->value;
    if (a.report->upper) a.upper = a.report->upper->value;
    a.exact = a.report->exact;
    if (a.exact) return a;
  } else if (has_loops(g)) {
    a.loops = true;
    return a;
  }

  OracleRun run;
  run.finite = lattice_index(m) != 0;
  try {
    ConcreteGraph cg;
    if (run.finite) {
      cg = materialize_finite(g, opts.cap);
    } else {
      run.radius = opts.radius.value_or(default_radius(m));
      cg = ball_subgraph(g, run.radius, opts.cap);
    }
    run.vertices = cg.vertex_count();
    run.result = chromatic_number(cg, opts.budget);
    if (opts.edges_path) {
      std::ofstream edges(*opts.edges_path);
      write_edge_list(edges, cg);
    }
  } catch (const CapExceeded& e) {
    a.cap_exceeded = true;
    a.cap_message = e.what();
    return a;
  }
  if (run.result.status == ChromaticStatus::Uncolorable) {
    a.loops = true;
    a.oracle = run;
    return a;
  }
  // A ball only bounds from below; the quotient bounds both ways.
  const int oracle_lower = run.result.lower;
  a.lower = a.lower ? std::max(*a.lower, oracle_lower) : oracle_lower;
  if (run.finite) a.upper = a.upper ? std::min(*a.upper, run.result.upper) : run.result.upper;
  a.exact = a.lower && a.upper && *a.lower == *a.upper;
  a.oracle = std::move(run);
  return a;
}

void render_analysis(std::ostream& out, const Analysis& a) {
  out << "matrix: " << a.matrix.rows() << " x " << a.matrix.cols() << '\n';
  out << format_matrix(a.matrix);
  if (a.loops) {
    std::optional<std::size_t> gen = a.report ? a.report->loop_generator : loop_generator(SACGraph(a.matrix));
    out << "uncolorable: loop";
    if (gen) out << " (generator " << *gen << ")";
    out << '\n';
    return;
  }
  out << "bipartite: ";
  if (a.bipartite.bipartite)
    out << "yes (all column sums even)\n";
  else
    out << "no (column " << *a.bipartite.odd_column << " sums to " << a.bipartite.column_sums[*a.bipartite.odd_column]
        << ")\n";
  if (a.report) {
    for (const auto& r : a.report->reductions)
      out << "reduction " << op_name(r.op) << ": " << r.source << " -> " << r.target << '\n';
    render_bound(out, "lemma lower bound", a.report->lower);
    render_bound(out, "lemma upper bound", a.report->upper);
  }
  if (a.cap_exceeded) out << "oracle: skipped, " << a.cap_message << '\n';
  if (a.oracle) {
    const auto& r = a.oracle->result;
    if (a.oracle->finite)
      out << "oracle: finite quotient, " << a.oracle->vertices << " vertices, ";
    else
      out << "oracle: ball of radius " << a.oracle->radius << ", " << a.oracle->vertices << " vertices, ";
    if (r.status == ChromaticStatus::Exact)
      out << "chi = " << r.upper << '\n';
    else
      out << "chi in [" << r.lower << ", " << r.upper << "] (budget exhausted)\n";
  }
  if (a.exact)
    out << "chi = " << *a.lower << (a.oracle ? "\n" : " (lemmas)\n");
  else if (a.lower && a.upper)
    out << "chi in [" << *a.lower << ", " << *a.upper << "]\n";
  else if (a.lower)
    out << "chi >= " << *a.lower << '\n';
  else
    out << "chi: no bounds\n";
}

std::string analysis_json(const Analysis& a) {
  json j;
  j["matrix"] = to_json(a.matrix);
  j["loops"] = a.loops;
  j["bipartite"] = a.bipartite.bipartite;
  j["pipeline"] = a.report ? to_json(*a.report) : json(nullptr);
  if (a.oracle) {
    j["oracle"] = json{{"finite", a.oracle->finite},
                       {"radius", a.oracle->finite ? json(nullptr) : json(a.oracle->radius)},
                       {"vertices", a.oracle->vertices},
                       {"result", to_json(a.oracle->result)}};
  } else {
    j["oracle"] = nullptr;
  }
  j["cap_exceeded"] = a.cap_exceeded;
  j["chi"] = json{{"lower", bound_summary(a.lower)}, {"upper", bound_summary(a.upper)}, {"exact", a.exact}};
  return j.dump(2) + "\n";
}

namespace {

int run_analysis(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err,
                 bool oracle_only) {
  HeubergerMatrix m;
  try {
    m = read_matrix(path);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  }
  Analysis a = analyze_matrix(m, opts, oracle_only);
  if (opts.json)
    out << analysis_json(a);
  else
    render_analysis(out, a);
  if (a.cap_exceeded) {
    err << a.cap_message << '\n';
    return kCapExceeded;
  }
  return kOk;
}

}  // namespace

int cmd_analyze(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err) {
  return run_analysis(path, opts, out, err, false);
}

int cmd_chi(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err) {
  return run_analysis(path, opts, out, err, true);
}

int cmd_convert(const std::string& direction, const std::vector<std::string>& args, const Options& opts,
                std::ostream& out, std::ostream& err) {
  json doc;
  std::string failure;
  try {
    if (direction == "distance-to-matrix" || direction == "circulant-to-matrix") {
      std::vector<Integer> values;
      for (const auto& s : args) values.push_back(parse_integer(s));
      HeubergerMatrix m;
      IntMatrix images, relations;
      if (direction == "distance-to-matrix") {
        if (values.empty()) throw ParseError("distance-to-matrix needs at least one distance");
        m = distance_to_matrix(values);
        images = IntMatrix(1, values.size(), values);
        relations = IntMatrix(1, 0);
      } else {
        if (values.size() < 2) throw ParseError("circulant-to-matrix needs n and at least one connection");
        std::vector<Integer> conn(values.begin() + 1, values.end());
        m = circulant_to_matrix(values[0], conn);
        images = IntMatrix(1, conn.size(), conn);
        relations = IntMatrix(1, 1, Vector{values[0]});
      }
      const bool ok = lattice_equal(m, kernel_mod_lattice(images, relations));
      if (opts.json) {
        doc = json{{"matrix", to_json(m)}, {"kernel_check", ok}};
      } else {
        out << format_matrix(m);
        out << "kernel check: " << (ok ? "ok" : "FAILED") << '\n';
      }
    } else if (direction == "matrix-to-distance") {
      if (args.size() != 1) throw ParseError("matrix-to-distance takes one matrix file");
      DistanceCheck c = check_distance(read_matrix(args[0]));
      if (!c.distances) {
        failure = c.failure;
      } else if (opts.json) {
        doc = json{{"cross_product", to_json(c.cross)}, {"gcd", integer_to_json(c.gcd)},
                   {"distances", to_json(*c.distances)}};
      } else {
        out << "Z, {" << join(*c.distances) << "}\n";
        out << "cross product: (" << join(c.cross) << "), gcd(v) = " << c.gcd << '\n';
      }
    } else if (direction == "matrix-to-circulant") {
      if (args.size() != 1) throw ParseError("matrix-to-circulant takes one matrix file");
      CirculantCheck c = check_circulant(read_matrix(args[0]), opts.del);
      if (!c.circulant) {
        failure = c.failure;
      } else if (opts.json) {
        doc = json{{"n", integer_to_json(c.circulant->n)},
                   {"connections", to_json(c.circulant->connections)},
                   {"det", integer_to_json(c.det)},
                   {"gcd", integer_to_json(c.gcd)}};
      } else {
        out << "Z_" << c.circulant->n << ", {" << join(c.circulant->connections) << "}\n";
      }
    } else {
      err << "unknown direction '" << direction
          << "' (expected distance-to-matrix, matrix-to-distance, circulant-to-matrix, matrix-to-circulant)\n";
      return kParseError;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const GenerationError& e) {
    failure = e.what();
  } catch (const DomainError& e) {
    failure = e.what();
  } catch (const DimensionError& e) {
    failure = e.what();
  }
  if (!failure.empty()) {
    if (opts.json)
      out << json{{"inapplicable", failure}}.dump(2) << '\n';
    else
      out << "inapplicable: " << failure << '\n';
    return kInapplicable;
  }
  if (opts.json) out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_payan(std::size_t n, const Options& opts, std::ostream& out, std::ostream& err) {
  PayanOptions po;
  po.mode = opts.samples ? PayanMode::Sampled : PayanMode::Exhaustive;
  if (opts.samples) po.samples = *opts.samples;
  po.seed = opts.seed;
  po.budget = opts.budget;
  PayanReport report;
  try {
    report = exhaustive_payan_check(n, po);
  } catch (const DomainError& e) {
    err << "payan: " << e.what() << '\n';
    return kParseError;
  } catch (const BudgetExceeded& e) {
    err << "payan: " << e.what() << '\n';
    return kCheckFailed;
  }
  if (opts.json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "checked " << report.entries.size() << " specs, chi=3 count: " << report.chi3_count << '\n';
    out << "inconsistent verdicts: " << report.inconsistent << '\n';
  }
  return report.chi3_count == 0 && report.inconsistent == 0 ? kOk : kCheckFailed;
}

int cmd_qnd(std::size_t n, const Options& opts, std::ostream& out, std::ostream& err) {
  HeubergerMatrix m;
  try {
    m = qnd_matrix(n);
  } catch (const DomainError& e) {
    err << "qnd: " << e.what() << '\n';
    return kParseError;
  }
  Analysis a = analyze_matrix(m, opts);
  if (opts.json)
    out << analysis_json(a);
  else
    render_analysis(out, a);
  return a.cap_exceeded ? kCapExceeded : kOk;
}

int cmd_batch(const std::string& dir, const Options& opts, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    err << "batch: '" << dir << "' is not a directory\n";
    return kParseError;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  struct Row {
    std::string name;
    std::optional<Analysis> analysis;
    std::string error;
    long long ms = 0;
  };
  std::vector<std::future<Row>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [f, &opts] {
      Row row{f.filename().string(), std::nullopt, "", 0};
      auto t0 = std::chrono::steady_clock::now();
      try {
        std::ifstream in(f);
        row.analysis = analyze_matrix(parse_matrix(in), opts);
        if (row.analysis->cap_exceeded) row.error = row.analysis->cap_message;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      return row;
    }));
  }
  std::vector<Row> rows;
  for (auto& j : jobs) rows.push_back(j.get());

  bool errors = false;
  if (opts.json) {
    json table = json::array();
    for (const auto& r : rows) {
      json entry{{"file", r.name}, {"error", r.error.empty() ? json(nullptr) : json(r.error)}};
      if (r.analysis) {
        entry["m"] = r.analysis->matrix.rows();
        entry["r"] = r.analysis->matrix.cols();
        entry["loops"] = r.analysis->loops;
        entry["lower"] = bound_summary(r.analysis->lower);
        entry["upper"] = bound_summary(r.analysis->upper);
        entry["exact"] = r.analysis->exact;
      }
      if (!r.error.empty()) {
        errors = true;
        err << r.name << ": " << r.error << '\n';
      }
      table.push_back(entry);
    }
    out << table.dump(2) << '\n';
  } else {
    out << std::left << std::setw(24) << "file" << std::setw(4) << "m" << std::setw(4) << "r" << std::setw(7)
        << "lower" << std::setw(7) << "upper" << std::setw(14) << "chi" << "ms\n";
    for (const auto& r : rows) {
      if (!r.analysis) continue;
      const Analysis& a = *r.analysis;
      auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
      std::string chi = a.loops ? "loop" : a.exact ? std::to_string(*a.lower) : "[" + show(a.lower) + ", " + show(a.upper) + "]";
      out << std::left << std::setw(24) << r.name << std::setw(4) << a.matrix.rows() << std::setw(4) << a.matrix.cols()
          << std::setw(7) << show(a.lower) << std::setw(7) << show(a.upper) << std::setw(14) << chi << r.ms << '\n';
    }
    for (const auto& r : rows) {
      if (r.error.empty()) continue;
      errors = true;
      err << r.name << ": " << r.error << '\n';
    }
  }
  return errors ? kBatchErrors : kOk;
}

}  // namespace heuberger::cli
