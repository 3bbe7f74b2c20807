// topoconn command-line front end. Structured output is JSON on stdout; exit codes are
// 0 for true/sat, 1 for false/unsat up to the bound, 2 for usage and input errors.
#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "topoconn/constructions.hpp"
#include "topoconn/embed3d.hpp"
#include "topoconn/io.hpp"
#include "topoconn/pcp.hpp"
#include "topoconn/solver.hpp"

using namespace topoconn;

namespace {

json out_json() { return {{"format", kFormat}}; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_text(path);
}

FormulaPtr read_formula(const std::string& path) {
  try {
    return parse(read_input(path));
  } catch (const Error& e) {
    fail(e.code(), e.what(), path + (e.location().empty() ? "" : ":" + e.location()));
  }
}

json read_json_arg(const std::string& path) {
  if (path != "-") return read_json(path);
  try {
    return json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    fail("InvalidJson", e.what(), "stdin");
  }
}

// accepts a bare model or the output of `solve`
json unwrap_model(const json& j) { return j.is_object() && j.contains("model") ? j.at("model") : j; }

void write_or_print(const std::optional<std::string>& out, const std::string& text) {
  if (out)
    write_text(*out, text);
  else
    std::cout << text;
}

json conjunct_json(const std::vector<std::pair<FormulaPtr, bool>>& rep) {
  json a = json::array();
  for (auto& [c, v] : rep) a.push_back({{"conjunct", print(c)}, {"value", v}});
  return a;
}

Graph graph_from_json(const json& j) {
  try {
    Graph g;
    g.vertices = j.at("vertices").get<std::vector<std::string>>();
    for (auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) fail("InvalidJson", "an edge is a pair of vertex ids, got " + e.dump());
      g.edges.insert({e[0].get<std::string>(), e[1].get<std::string>()});
    }
    return g;
  } catch (const json::exception& e) {
    fail("InvalidJson", std::string("graph: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological connectedness constraints: parsing, model checking, bounded search, "
               "formula families, PCP encodings and 3D embeddings"};
  app.require_subcommand(1);
  int code = 0;

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print its normal form");
  std::string fml;
  cmd_parse->add_option("formula", fml, "formula file, or - for stdin")->required();

  // check
  auto* cmd_check = app.add_subcommand("check", "evaluate a formula in a model");
  std::string kind = "qs", model_path;
  std::optional<std::string> dot;
  cmd_check->add_option("--kind", kind, "model kind")->check(CLI::IsMember({"qs", "poly"}));
  cmd_check->add_option("formula", fml)->required();
  cmd_check->add_option("model", model_path)->required();
  cmd_check->add_option("--dot", dot, "write the quasi-saw as Graphviz DOT");

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "bounded model search");
  std::string cls = "qs";
  std::optional<int> bound;
  uint64_t seed = 0;
  int jobs = 0, max_w0 = 64;
  std::optional<std::string> out;
  cmd_solve->add_option("--class", cls, "qs, qs2, conn-qs or conn-qs2");
  cmd_solve->add_option("--bound", bound, "largest |W0| searched (default: default_bound of the formula)");
  cmd_solve->add_option("--seed", seed, "0 keeps the canonical order");
  cmd_solve->add_option("--jobs", jobs, "OpenMP threads, 1 = serial, 0 = runtime default");
  cmd_solve->add_option("--max-w0", max_w0, "hard cap on |W0|; larger bounds raise BoundTooLarge unless a model is found");
  cmd_solve->add_option("--out", out, "also write the witness model here");
  cmd_solve->add_option("--dot", dot, "write the witness space as Graphviz DOT");
  cmd_solve->add_option("formula", fml)->required();

  // gen
  auto* cmd_gen = app.add_subcommand("gen", "print a formula family member");
  std::string family;
  std::optional<int> k, n;
  cmd_gen->add_option("--family", family)->required();
  cmd_gen->add_option("--k", k, "index for phi_k");
  cmd_gen->add_option("--n", n, "index for the indexed schemas");
  cmd_gen->add_option("--out", out);

  // transform
  auto* cmd_tr = app.add_subcommand("transform", "rewrite a formula into a smaller language");
  std::string to;
  cmd_tr->add_option("--to", to)->required()->check(CLI::IsMember({"bc", "bci", "interior"}));
  cmd_tr->add_option("formula", fml)->required();
  cmd_tr->add_option("--out", out);

  // witness
  auto* cmd_wit = app.add_subcommand("witness", "build a polygonal witness and evaluate it");
  cmd_wit->add_option("--family", family)->required();
  cmd_wit->add_option("--n", n);
  cmd_wit->add_option("--k", k);
  cmd_wit->add_option("--out", out, "write the polygon model here");

  // graph
  auto* cmd_graph = app.add_subcommand("graph", "neighbourhood graph to 2-quasi-saw");
  std::string graph_path;
  cmd_graph->add_option("graph", graph_path, "{\"vertices\":[...],\"edges\":[[x,y],...]}")->required();
  cmd_graph->add_option("--dot", dot, "write the graph as Graphviz DOT");
  cmd_graph->add_option("--out", out);

  // pcp
  auto* cmd_pcp = app.add_subcommand("pcp", "PCP instance encodings");
  cmd_pcp->require_subcommand(1);
  auto* cmd_pcp_compile = cmd_pcp->add_subcommand("compile", "encode an instance as a formula");
  std::string inst_path, target = "bcc";
  std::optional<std::string> report;
  cmd_pcp_compile->add_option("instance", inst_path)->required();
  cmd_pcp_compile->add_option("--target", target)->check(CLI::IsMember({"bcc", "bc", "bcci", "bci"}));
  cmd_pcp_compile->add_option("--out", out, "formula file (default: stdout summary only)");
  cmd_pcp_compile->add_option("--report", report, "compile report JSON");

  // embed
  auto* cmd_embed = app.add_subcommand("embed", "ball-and-rod scenes in R^3");
  int stage = 1;
  std::string scene_path;
  cmd_embed->add_option("model", model_path);
  cmd_embed->add_option("--stage", stage)->check(CLI::PositiveNumber);
  cmd_embed->add_option("--out", out);
  cmd_embed->add_option("--dot", dot, "write the (normalised) space as Graphviz DOT");
  auto* cmd_verify = cmd_embed->add_subcommand("verify", "exact checks of a scene against its model");
  cmd_verify->add_option("scene", scene_path)->required();
  cmd_verify->add_option("model", model_path)->required();
  cmd_verify->add_option("--jobs", jobs, "OpenMP threads for the pair checks, 1 = serial");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(error_to_json(Error("UsageError", e.what())));
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_parse->parsed()) {
      auto f = read_formula(fml);
      auto vars = variables(*f);
      json j = out_json();
      j["formula"] = print(f);
      j["language"] = tag_name(classify(*f));
      j["variables"] = std::vector<std::string>(vars.begin(), vars.end());
      j["atoms"] = atom_count(*f);
      j["conjuncts"] = conjuncts(f).size();
      j["default_bound"] = default_bound(*f);
      emit(j);
    } else if (cmd_check->parsed()) {
      auto f = read_formula(fml);
      auto mj = unwrap_model(read_json_arg(model_path));
      json j = out_json();
      bool v;
      if (kind == "qs") {
        auto m = qs_model_from_json(mj);
        for (auto& x : variables(*f))
          if (!m.valuation.count(x)) fail("UnboundVariable", "model has no value for '" + x + "'", x);
        v = eval(m, *f);
        j["conjuncts"] = conjunct_json(conjunct_report(m, f));
        if (dot) write_text(*dot, to_dot(*m.space));
      } else {
        auto m = poly_model_from_json(mj);
        for (auto& x : variables(*f))
          if (!m.valuation.count(x)) fail("UnboundVariable", "model has no value for '" + x + "'", x);
        v = eval(m, *f);
        j["conjuncts"] = conjunct_json(conjunct_report(m, f));
      }
      j["result"] = v;
      emit(j);
      code = v ? 0 : 1;
    } else if (cmd_solve->parsed()) {
      auto f = read_formula(fml);
      SpaceClass c = parse_class(cls);
      int b = bound ? *bound : default_bound(*f);
      SolveOptions opt;
      opt.seed = seed;
      opt.jobs = jobs;
      opt.max_w0 = max_w0;
      SolveStats st;
      auto r = solve(f, c, b, opt, &st);
      json j = out_json();
      j["class"] = class_name(c);
      j["bound"] = b;
      j["nodes"] = st.nodes;
      if (r.sat) {
        j["result"] = "sat";
        j["model"] = qs_model_to_json(r.witness);
        j["verified"] = verify(*f, r.witness, c);
        if (out) write_text(*out, j["model"].dump(2) + "\n");
        if (dot) write_text(*dot, to_dot(*r.witness.space));
      } else {
        j["result"] = "unsat_up_to_bound";
      }
      emit(j);
      code = r.sat ? 0 : 1;
    } else if (cmd_gen->parsed()) {
      FamilyId id{parse_family(family), 0};
      if (family_indexed(id.kind)) {
        if (!k && !n) fail("UsageError", "family '" + family + "' needs --k or --n");
        id.n = k ? *k : *n;
      }
      write_or_print(out, print(generate(id)) + "\n");
    } else if (cmd_tr->parsed()) {
      auto f = read_formula(fml);
      FormulaPtr g = to == "interior"  ? transform_c_to_interior(f)
                     : to == "bc"      ? eliminate_contacts(f, ContactTarget::Bc)
                                       : eliminate_contacts(f, ContactTarget::Bci);
      write_or_print(out, print(g) + "\n");
    } else if (cmd_wit->parsed()) {
      auto wk = parse_witness(family);
      int idx = n ? *n : k ? *k : 0;
      auto m = witness(wk, idx);
      auto f = witness_formula(wk, idx);
      auto rep = conjunct_report(m, f);
      json failing = json::array();
      for (auto& [cj, v] : rep)
        if (!v) failing.push_back(print(cj));
      json j = out_json();
      j["witness"] = witness_name(wk);
      j["n"] = idx;
      j["formula"] = print(f);
      j["holds"] = failing.empty();
      j["failing_conjuncts"] = failing;
      if (out) write_text(*out, poly_model_to_json(m).dump(2) + "\n");
      else j["model"] = poly_model_to_json(m);
      emit(j);
    } else if (cmd_graph->parsed()) {
      auto g = graph_from_json(read_json_arg(graph_path));
      auto q = neighbourhood_to_quasisaw(g);
      json j = out_json();
      j["space"] = qs_to_json(q);
      j["two_quasi_saw"] = q.two_quasi_saw();
      j["connected"] = q.connected();
      if (out) write_text(*out, j["space"].dump(2) + "\n");
      if (dot) write_text(*dot, to_dot(g));
      emit(j);
    } else if (cmd_pcp_compile->parsed()) {
      auto inst = pcp_from_json(read_json_arg(inst_path));
      auto t = parse_target(target);
      auto c = compile(inst);
      FormulaPtr f = t == PcpTarget::BCc ? c.formula : compile_variant(inst, t);
      json rep = compile_report_to_json(c.report);
      rep["target"] = target_name(t);
      rep["target_atoms"] = atom_count(*f);
      rep["target_language"] = tag_name(classify(*f));
      if (out) write_text(*out, print(f) + "\n");
      if (report) write_text(*report, rep.dump(2) + "\n");
      json j = out_json();
      j["report"] = rep;
      emit(j);
    } else if (cmd_verify->parsed()) {
      auto m = normalize_z0(qs_model_from_json(unwrap_model(read_json_arg(model_path))));
      auto s = scene_from_json(read_json_arg(scene_path));
      auto r = verify_scene(s, m, jobs);
      json j = out_json();
      j.update(scene_report_to_json(r));
      emit(j);
      code = r.valid ? 0 : 1;
    } else if (cmd_embed->parsed()) {
      if (model_path.empty()) fail("UsageError", "embed needs a model file (or the verify subcommand)");
      auto raw = qs_model_from_json(unwrap_model(read_json_arg(model_path)));
      auto m = normalize_z0(raw);
      auto s = embed(m, stage);
      auto sj = scene_to_json(s);
      if (out) write_text(*out, sj.dump(2) + "\n");
      if (dot) write_text(*dot, to_dot(*m.space));
      json j = out_json();
      j["stage"] = stage;
      j["normalized"] = m.space != raw.space;
      j["balls"] = s.balls.size();
      j["rods"] = s.rods.size();
      if (!out) j["scene"] = sj;
      emit(j);
    }
  } catch (const Error& e) {
    emit(error_to_json(e));
    std::cerr << "error: " << e.code() << ": " << e.what();
    if (!e.location().empty()) std::cerr << " (" << e.location() << ")";
    std::cerr << "\n";
    return 2;
  }
  return code;
}
