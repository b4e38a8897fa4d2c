#include "cli.hpp"

#include <prptl/canonical.hpp>
#include <prptl/checker.hpp>
#include <prptl/dtmc.hpp>
#include <prptl/error.hpp>
#include <prptl/normal_form.hpp>
#include <prptl/parser.hpp>
#include <prptl/semantics.hpp>
#include <prptl/tnfg.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace prptl::cli {

namespace {

using json = nlohmann::json;

/// Input problems the user can fix: bad files, bad syntax, bad flag values.
class usage_problem : public error {
public:
  using error::error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw usage_problem("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct settings {
  std::string format = "text";
  std::string formula_text;
  std::string formula_file;
  std::string model_file;
  std::string trace_file;
  std::string query_text;
  bool dot = false;
  std::size_t node_limit = 10000;
  std::size_t horizon = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  checker_options checker;
};

std::string formula_source(const settings& s) {
  if (!s.formula_file.empty()) {
    if (!s.formula_text.empty()) throw usage_problem("give either a formula or --formula-file, not both");
    return read_file(s.formula_file);
  }
  if (s.formula_text.empty()) throw usage_problem("missing formula argument");
  return s.formula_text;
}

std::string describe(const check_result& r) {
  if (r.exact) return to_string(*r.exact);
  std::ostringstream ss;
  ss.precision(12);
  ss << r.probability << " ± ";
  ss.precision(3);
  ss << r.error_bound;
  return ss.str();
}

json record(const std::string& command, const check_result& r) {
  json j{{"command", command},
         {"method", to_string(r.method)},
         {"probability", r.probability},
         {"error_bound", r.error_bound},
         {"iterations", r.iterations},
         {"samples", r.samples}};
  j["fraction"] = r.exact ? json(to_string(*r.exact)) : json(nullptr);
  if (r.confidence) j["confidence"] = {r.confidence->first, r.confidence->second};
  if (r.method == check_method::monte_carlo) j["prefix_exact"] = r.prefix_exact;
  return j;
}

class session {
public:
  session(std::ostream& out, const settings& s) : out_(out), s_(s) {}

  bool json_lines() const { return s_.format == "json-lines"; }

  int parse() {
    std::string text = formula_source(s_);
    std::string_view trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    if (trimmed.starts_with("Pr")) {
      prob_query q = parse_query(text);
      std::string shown = "Pr" + to_string(q.cmp) + to_string(q.threshold) + " [ " +
                          render(canonicalize(q.body)) + " ]";
      emit({{"command", "parse"}, {"query", shown}}, shown);
    } else {
      std::string shown = render(canonicalize(parse_formula(text)));
      emit({{"command", "parse"}, {"formula", shown}}, shown);
    }
    return success;
  }

  int normal_form(bool complete) {
    formula f = parse_formula(formula_source(s_));
    normal_form_options opts;
    opts.max_continuations = s_.checker.max_residuals;
    normal_form_engine engine(opts);
    time_normal_form n = engine.tnf(f);
    if (complete) n = engine.ctnf(n);
    std::string shown = render(n);
    emit({{"command", complete ? "ctnf" : "tnf"}, {"normal_form", shown}}, shown);
    return success;
  }

  int graph() {
    formula f = parse_formula(formula_source(s_));
    tnfg g = build_tnfg(f, atoms(f), s_.node_limit);
    if (json_lines()) {
      json nodes = json::array(), edges = json::array();
      for (const auto& n : g.nodes())
        nodes.push_back({{"formula", n.terminal ? "eps" : render(n.state_formula)},
                         {"delay", n.delay.to_string()},
                         {"terminal", n.terminal}});
      for (const auto& e : g.edges())
        edges.push_back({{"source", e.source}, {"guard", e.condition.to_string()}, {"target", e.target}});
      out_ << json{{"command", "graph"}, {"root", g.root()}, {"nodes", nodes}, {"edges", edges}}.dump() << '\n';
    } else {
      out_ << (s_.dot ? to_dot(g) : g.listing());
    }
    return success;
  }

  int eval() {
    interval sigma = parse_trace(read_file(s_.trace_file));
    formula f = parse_formula(formula_source(s_));
    bool value = evaluate(sigma, 0, sigma.length(), f);
    emit({{"command", "eval"}, {"value", value}, {"length", sigma.length()}}, value ? "true" : "false");
    return value ? success : fails;
  }

  int check() {
    dtmc m = load_dtmc(read_file(s_.model_file));
    prob_query q = parse_query(s_.query_text);
    query_result r = check_query(m, q, s_.checker);
    json j = record("check", r.detail);
    j["verdict"] = to_string(r.outcome);
    emit(j, to_string(r.outcome) + " (" + describe(r.detail) + ")");
    switch (r.outcome) {
    case verdict::holds:
      return success;
    case verdict::fails:
      return fails;
    case verdict::inconclusive:
      return inconclusive;
    }
    return computation_error;
  }

  int exact() {
    dtmc m = load_dtmc(read_file(s_.model_file));
    formula f = parse_formula(formula_source(s_));
    check_result r;
    r.method = check_method::enumeration;
    r.exact = enumerate_exact(m, f, s_.horizon, s_.checker);
    r.probability = to_double(*r.exact);
    json j = record("exact", r);
    j["horizon"] = s_.horizon;
    emit(j, to_string(*r.exact));
    return success;
  }

  int sample() {
    if (s_.samples == 0) throw usage_problem("--samples must be positive");
    dtmc m = load_dtmc(read_file(s_.model_file));
    formula f = parse_formula(formula_source(s_));
    check_result r = estimate(m, f, s_.samples, s_.horizon, s_.seed);
    std::ostringstream ss;
    ss.precision(6);
    ss << r.probability << " [" << r.confidence->first << ", " << r.confidence->second << "] ("
       << r.samples << " samples" << (r.prefix_exact ? "" : ", prefix may not decide the formula") << ")";
    emit(record("sample", r), ss.str());
    return success;
  }

private:
  void emit(const json& j, const std::string& text) {
    if (json_lines())
      out_ << j.dump() << '\n';
    else
      out_ << text << '\n';
  }

  std::ostream& out_;
  const settings& s_;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  settings s;
  CLI::App app{"PrPTL formula toolkit: normal forms, TNF graphs and DTMC model checking", "prptl"};
  app.require_subcommand(1);
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"text", "json-lines"}))
      ->capture_default_str();

  auto formula_args = [&](CLI::App* cmd) {
    cmd->add_option("formula", s.formula_text, "Formula text");
    cmd->add_option("--formula-file", s.formula_file, "Read the formula from a file");
  };
  auto solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tolerance", s.checker.tolerance, "Fixpoint stopping gap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-iterations", s.checker.max_iterations, "Fixpoint sweep cap")->capture_default_str();
    cmd->add_option("--horizon-cap", s.checker.max_horizon, "Largest horizon for exact DP")->capture_default_str();
  };

  auto* parse = app.add_subcommand("parse", "Parse a formula or query and print it in core syntax");
  formula_args(parse);
  auto* tnf_cmd = app.add_subcommand("tnf", "Print the time normal form");
  formula_args(tnf_cmd);
  auto* ctnf_cmd = app.add_subcommand("ctnf", "Print the complete time normal form");
  formula_args(ctnf_cmd);
  auto* graph = app.add_subcommand("graph", "Build the time normal form graph");
  formula_args(graph);
  graph->add_flag("--dot", s.dot, "Emit Graphviz DOT");
  graph->add_option("--node-limit", s.node_limit, "Maximum number of nodes")->capture_default_str();
  auto* eval = app.add_subcommand("eval", "Evaluate a formula on a finite trace");
  eval->add_option("trace", s.trace_file, "Trace file")->required();
  formula_args(eval);
  auto* check = app.add_subcommand("check", "Decide a probability query on a DTMC");
  check->add_option("model", s.model_file, "Model file")->required();
  check->add_option("query", s.query_text, "Query, e.g. 'Pr>=0.5 [ <> q ]'")->required();
  solver_flags(check);
  auto* exact = app.add_subcommand("exact", "Exact probability by path enumeration up to a horizon");
  exact->add_option("model", s.model_file, "Model file")->required();
  formula_args(exact);
  exact->add_option("--horizon", s.horizon, "Path length")->required();
  exact->add_option("--max-paths", s.checker.max_paths, "Enumeration budget")->capture_default_str();
  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate over sampled path prefixes");
  sample->add_option("model", s.model_file, "Model file")->required();
  formula_args(sample);
  sample->add_option("--samples", s.samples, "Number of sampled paths")->required();
  sample->add_option("--horizon", s.horizon, "Prefix length")->required();
  sample->add_option("--seed", s.seed, "Generator seed")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? success : usage_error;
  }

  session run(out, s);
  try {
    if (*parse) return run.parse();
    if (*tnf_cmd) return run.normal_form(false);
    if (*ctnf_cmd) return run.normal_form(true);
    if (*graph) return run.graph();
    if (*eval) return run.eval();
    if (*check) return run.check();
    if (*exact) return run.exact();
    if (*sample) return run.sample();
  } catch (const usage_problem& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const syntax_error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return computation_error;
  }
  return usage_error;
}

} // namespace prptl::cli
