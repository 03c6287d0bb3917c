#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "semilab/character.hpp"
#include "semilab/complexio.hpp"
#include "semilab/derivation.hpp"
#include "semilab/json_io.hpp"
#include "semilab/profile.hpp"

namespace {

using namespace semilab;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("SEMILAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("SEMILAB_SEED is not an unsigned integer");
    }
  }
  return flag_seed;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

std::vector<Complex> parse_complex_list(const std::string& s) {
  std::vector<Complex> out;
  for (const std::string& tok : split_list(s)) out.push_back(parse_complex(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const std::string& tok : split_list(s)) out.push_back(std::stoi(tok));
  return out;
}

Complex mu_from_turns(double turns) {
  if (turns == 0.0) return Complex{1.0, 0.0};
  const double th = 2.0 * M_PI * turns;
  return Complex{std::cos(th), std::sin(th)};
}

// Markdown rendering of a report: nested bullet lists with inline scalars.
void render_md(const Json& j, std::ostream& os, const std::string& key, int depth) {
  const std::string pad(2 * depth, ' ');
  const std::string label = key.empty() ? "" : key + ": ";
  if (j.is_object()) {
    if (!key.empty()) os << pad << "- " << key << ":\n";
    for (const auto& [k, v] : j.items()) render_md(v, os, k, key.empty() ? depth : depth + 1);
  } else if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j)
      if (v.is_object() || v.is_array()) scalars = false;
    if (scalars) {
      os << pad << "- " << label << j.dump() << "\n";
    } else {
      os << pad << "- " << (key.empty() ? "items" : key) << ":\n";
      int idx = 0;
      for (const auto& v : j) render_md(v, os, "[" + std::to_string(idx++) + "]", depth + 1);
    }
  } else {
    os << pad << "- " << label << j.dump() << "\n";
  }
}

void emit(const Json& j, const std::string& format) {
  if (format == "md")
    render_md(j, std::cout, "", 0);
  else
    std::cout << j.dump(2) << "\n";
}

PathWord cycle_from_flag(const DirectedGraph& g, const std::string& cycle_csv) {
  const PathWord w = g.make_path(split_list(cycle_csv));
  if (!g.is_cycle(w)) throw std::invalid_argument("--cycle is not a cycle of the graph");
  return w;
}

Json cc_report_json(const CcReport& r) {
  Json items = Json::array();
  for (const auto& it : r.items)
    items.push_back(Json{{"condition", it.condition},
                         {"pass", it.pass},
                         {"value", it.value},
                         {"witness", it.witness}});
  return Json{{"pass", r.pass}, {"row_norm", r.row_norm}, {"items", items}};
}

Json poly_list_json(const std::vector<NcPoly>& polys) {
  Json out = Json::array();
  for (const auto& p : polys) out.push_back(ncpoly_to_json(p));
  return out;
}

// Shared flags for the subcommands that build a representation.
struct RepFlags {
  std::string graph_file;
  std::string cycle_csv;
  std::string lambda_str = "0.5";
  double mu_turns = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("graph", graph_file, "graph JSON file")->required();
    cmd->add_option("--cycle", cycle_csv, "comma-separated edge ids of a cycle")->required();
    cmd->add_option("--lambda", lambda_str, "evaluation point, a+bi form (default 0.5)");
    cmd->add_option("--mu", mu_turns, "twist as an angle in turns (default 0)");
  }
};

struct LoadedRep {
  DirectedGraph graph;
  PathWord cycle;
  Complex lambda;
  Complex mu;
  MatrixRep rep;
};

LoadedRep build_rep(const RepFlags& f) {
  LoadedRep out;
  out.graph = graph_from_json(load_json_file(f.graph_file));
  out.cycle = cycle_from_flag(out.graph, f.cycle_csv);
  out.lambda = parse_complex(f.lambda_str);
  out.mu = mu_from_turns(f.mu_turns);
  out.rep = pi_w_lambda_mu(out.graph, out.cycle, out.lambda, out.mu);
  return out;
}

DerivationAtRep default_profile_derivation(const LoadedRep& lr) {
  // Prefer the loop construction (on C_1 this is D(z) = 1); otherwise fall
  // back to the first element of the constraint-space basis.
  for (int e : lr.cycle.edges)
    if (lr.graph.source(e) == lr.graph.range(e))
      return build_noninner_case_ii(lr.graph, lr.cycle, lr.lambda, lr.mu, e);
  auto [dim, basis] = derivation_space(lr.rep);
  if (dim == 0) throw std::invalid_argument("no nonzero derivations at this representation");
  return basis.front();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-algebra representations, point derivations, and characters"};
  app.require_subcommand(1);
  std::string output = "json";
  app.add_option("--output", output, "report format: json or md")
      ->check(CLI::IsMember({"json", "md"}));
  std::uint64_t seed = RunConfig{}.seed;
  app.add_option("--seed", seed, "seed for randomized checks (SEMILAB_SEED overrides)");

  // graph ------------------------------------------------------------------
  auto* graph_cmd = app.add_subcommand("graph", "create and inspect graphs");
  graph_cmd->require_subcommand(1);

  auto* graph_new = graph_cmd->add_subcommand("new", "emit a fixture graph");
  std::string kind;
  int fixture_n = 1;
  graph_new->add_option("kind", kind, "cycle | single | gilfeather")
      ->required()
      ->check(CLI::IsMember({"cycle", "single", "gilfeather"}));
  graph_new->add_option("n", fixture_n, "size parameter")->required();

  auto* graph_check = graph_cmd->add_subcommand("check", "validate a graph file");
  std::string graph_file;
  graph_check->add_option("file", graph_file, "graph JSON file")->required();

  auto* graph_cycles = graph_cmd->add_subcommand("cycles", "enumerate primitive cycles");
  std::string cycles_file;
  int cycles_max_len = 6;
  graph_cycles->add_option("file", cycles_file, "graph JSON file")->required();
  graph_cycles->add_option("--max-len", cycles_max_len, "maximum cycle length (default 6)");

  // rep --------------------------------------------------------------------
  auto* rep_cmd = app.add_subcommand("rep", "build and verify representations");
  rep_cmd->require_subcommand(1);

  auto* rep_build = rep_cmd->add_subcommand("build", "emit the representation JSON");
  RepFlags rep_build_flags;
  rep_build_flags.attach(rep_build);

  auto* rep_verify = rep_cmd->add_subcommand(
      "verify", "check contractivity, ontoness, and the cycle-model factorization");
  RepFlags rep_verify_flags;
  rep_verify_flags.attach(rep_verify);
  int rep_max_len = 8;
  double rep_tol = RunConfig{}.tol;
  rep_verify->add_option("--max-len", rep_max_len, "word length bound (default 8)");
  rep_verify->add_option("--tol", rep_tol, "tolerance (default 1e-10)");

  // deriv ------------------------------------------------------------------
  auto* deriv_cmd = app.add_subcommand("deriv", "point derivations at a representation");
  deriv_cmd->require_subcommand(1);

  auto* deriv_space_cmd = deriv_cmd->add_subcommand("space", "derivation space dimensions");
  RepFlags deriv_space_flags;
  deriv_space_flags.attach(deriv_space_cmd);

  auto* deriv_classify = deriv_cmd->add_subcommand(
      "classify", "inner/factoring classification of a derivation");
  RepFlags deriv_classify_flags;
  deriv_classify_flags.attach(deriv_classify);
  std::string deriv_file;
  int classify_max_len = 8;
  double classify_tol = 1e-9;
  deriv_classify->add_option("--derivation", deriv_file,
                             "derivation JSON (default: seeded basis element)");
  deriv_classify->add_option("--max-len", classify_max_len,
                             "factor-test word length bound (default 8)");
  deriv_classify->add_option("--tol", classify_tol, "tolerance (default 1e-9)");

  auto* construct_i = deriv_cmd->add_subcommand(
      "construct-i", "non-factoring derivation from an off-cycle edge");
  RepFlags construct_i_flags;
  construct_i_flags.attach(construct_i);
  std::string construct_i_edge;
  construct_i->add_option("--edge", construct_i_edge, "edge id (default: first certificate)");

  auto* construct_ii = deriv_cmd->add_subcommand(
      "construct-ii", "non-factoring derivation from a loop on the cycle");
  RepFlags construct_ii_flags;
  construct_ii_flags.attach(construct_ii);
  std::string construct_ii_edge;
  construct_ii->add_option("--edge", construct_ii_edge, "edge id (default: first certificate)");

  auto* deriv_profile = deriv_cmd->add_subcommand(
      "profile", "norm-growth profile of a derivation (md output = CSV)");
  RepFlags deriv_profile_flags;
  deriv_profile_flags.attach(deriv_profile);
  std::string profile_degrees = "1,2,4,8,16";
  std::string profile_deriv_file;
  int profile_grid = RunConfig{}.grid;
  deriv_profile->add_option("--degrees", profile_degrees, "comma-separated degree list");
  deriv_profile->add_option("--derivation", profile_deriv_file,
                            "derivation JSON (default: loop construction)");
  deriv_profile->add_option("--grid", profile_grid, "circle grid size (default 256)");

  // char -------------------------------------------------------------------
  auto* char_cmd = app.add_subcommand("char", "characters and their point derivations");
  char_cmd->require_subcommand(1);

  auto* char_list = char_cmd->add_subcommand("list", "character structures of a graph");
  std::string char_list_file;
  char_list->add_option("file", char_list_file, "graph JSON file")->required();

  auto* char_deriv = char_cmd->add_subcommand(
      "deriv", "decompose a character derivation and run its checks");
  std::string char_deriv_file, char_lambda_str, char_d_str, char_v0;
  int char_samples = 100, char_max_degree = 5;
  char_deriv->add_option("file", char_deriv_file, "graph JSON file")->required();
  char_deriv->add_option("--lambda", char_lambda_str, "comma-separated loop values")->required();
  char_deriv->add_option("--d", char_d_str, "comma-separated derivation values")->required();
  char_deriv->add_option("--v0", char_v0, "vertex id (default: only vertex with loops)");
  char_deriv->add_option("--samples", char_samples, "randomized samples (default 100)");
  char_deriv->add_option("--max-degree", char_max_degree, "sample degree bound (default 5)");

  auto* char_boundary = char_cmd->add_subcommand(
      "boundary", "peaking witness at a boundary point");
  std::string boundary_lambda_str;
  int boundary_grid = 512;
  double boundary_margin = 0.1;
  char_boundary->add_option("--lambda", boundary_lambda_str, "unit-sphere vector")->required();
  char_boundary->add_option("--grid", boundary_grid, "slice grid size (default 512)");
  char_boundary->add_option("--margin", boundary_margin, "peak exclusion radius (default 0.1)");

  // Let the global flags (--output, --seed) appear after subcommand
  // arguments: unmatched options climb from the leaf to the root.
  for (CLI::App* top : {graph_cmd, rep_cmd, deriv_cmd, char_cmd}) {
    top->fallthrough();
    for (CLI::App* sub : top->get_subcommands([](CLI::App*) { return true; }))
      sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const std::uint64_t run_seed = effective_seed(seed);

    if (graph_new->parsed()) {
      DirectedGraph g;
      if (kind == "cycle")
        g = cycle_graph(fixture_n);
      else if (kind == "single")
        g = single_vertex_graph(fixture_n);
      else
        g = gilfeather_graph(fixture_n);
      emit(graph_to_json(g), output);
      return kExitOk;
    }

    if (graph_check->parsed()) {
      const DirectedGraph g = graph_from_json(load_json_file(graph_file));
      emit(graph_to_json(g), output);
      return kExitOk;
    }

    if (graph_cycles->parsed()) {
      const DirectedGraph g = graph_from_json(load_json_file(cycles_file));
      Json cycles = Json::array();
      for (const PathWord& w : g.enumerate_primitive_cycles(cycles_max_len)) {
        Json ids = Json::array();
        for (int e : w.edges) ids.push_back(g.edge(e).id);
        cycles.push_back(ids);
      }
      emit(Json{{"cycles", cycles}, {"max_len", cycles_max_len}}, output);
      return kExitOk;
    }

    if (rep_build->parsed()) {
      const LoadedRep lr = build_rep(rep_build_flags);
      emit(rep_to_json(lr.rep), output);
      return kExitOk;
    }

    if (rep_verify->parsed()) {
      const LoadedRep lr = build_rep(rep_verify_flags);
      const CcReport cc = validate_cc(lr.rep, rep_tol);
      const int image_dim = image_dimension(lr.rep, 2 * lr.rep.dim);
      const bool onto = image_dim == lr.rep.dim * lr.rep.dim;
      const FactorizationReport fac = verify_factorization(
          lr.graph, lr.cycle, lr.lambda, lr.mu, rep_max_len, rep_tol);
      const bool ok = cc.pass && fac.pass;
      emit(Json{{"cc", cc_report_json(cc)},
                {"image_dimension", image_dim},
                {"onto", onto},
                {"factorization", Json{{"pass", fac.pass},
                                       {"max_discrepancy", fac.max_discrepancy},
                                       {"words_checked", fac.words_checked}}},
                {"pass", ok}},
           output);
      return ok ? kExitOk : kExitViolation;
    }

    if (deriv_space_cmd->parsed()) {
      const LoadedRep lr = build_rep(deriv_space_flags);
      auto [dim, basis] = derivation_space(lr.rep);
      emit(Json{{"dim", dim},
                {"inner_dim", inner_dimension(lr.rep)},
                {"outer_dim", outer_dimension(lr.rep)}},
           output);
      return kExitOk;
    }

    if (deriv_classify->parsed()) {
      const LoadedRep lr = build_rep(deriv_classify_flags);
      auto [dim, basis] = derivation_space(lr.rep);
      DerivationAtRep d;
      if (!deriv_file.empty()) {
        d = derivation_from_json(load_json_file(deriv_file), lr.graph);
        if (d.rep.dim != lr.rep.dim)
          throw std::invalid_argument("derivation dimension does not match the representation");
      } else {
        if (dim == 0) throw std::invalid_argument("derivation space is zero");
        d = basis[static_cast<std::size_t>(run_seed % dim)];
      }
      const DerivationReport val = validate(d, classify_tol);
      const InnerSolve solve = solve_inner(d, classify_tol);
      const FactorsResult fac = factors_through_cycle(d, lr.cycle, classify_max_len, classify_tol);
      const bool continuity_unverified = std::abs(lr.lambda) >= 1.0 - 1e-12;
      Json witnesses = Json::array();
      for (std::size_t i = 0; i < fac.witnesses.size(); ++i)
        witnesses.push_back(Json{{"poly", ncpoly_to_json(fac.witnesses[i])},
                                 {"value", fac.witness_values[i]}});
      emit(Json{{"dim", dim},
                {"inner_dim", inner_dimension(lr.rep)},
                {"outer_dim", outer_dimension(lr.rep)},
                {"valid", val.pass},
                {"inner", solve.success},
                {"inner_residual", solve.residual},
                {"factors", fac.factors},
                {"factor_violation", fac.max_violation},
                {"witnesses", witnesses},
                {"continuity_unverified", continuity_unverified}},
           output);
      return val.pass ? kExitOk : kExitViolation;
    }

    if (construct_i->parsed() || construct_ii->parsed()) {
      const bool case_i = construct_i->parsed();
      const RepFlags& flags = case_i ? construct_i_flags : construct_ii_flags;
      const std::string& edge_flag = case_i ? construct_i_edge : construct_ii_edge;
      const LoadedRep lr = build_rep(flags);
      const NoninnerResult nr = noninner_exists(lr.graph, lr.cycle);
      Json certs = Json::array();
      for (const auto& c : nr.certificates)
        certs.push_back(Json{{"case", c.case_id},
                             {"edge", lr.graph.edge(c.edge).id},
                             {"j", c.j},
                             {"i", c.i}});
      const int want_case = case_i ? 1 : 2;
      int edge = -1;
      if (!edge_flag.empty()) {
        edge = lr.graph.edge_index(edge_flag);
      } else {
        for (const auto& c : nr.certificates)
          if (c.case_id == want_case) {
            edge = c.edge;
            break;
          }
        if (edge < 0) {
          std::cerr << "error: no case-" << (case_i ? "i" : "ii")
                    << " certificate; found " << certs.dump() << "\n";
          return kExitInput;
        }
      }
      const DerivationAtRep d =
          case_i ? build_noninner_case_i(lr.graph, lr.cycle, lr.lambda, lr.mu, edge)
                 : build_noninner_case_ii(lr.graph, lr.cycle, lr.lambda, lr.mu, edge);
      const DerivationReport val = validate(d, 1e-9);
      const InnerSolve solve = solve_inner(d, 1e-9);
      const FactorsResult fac = factors_through_cycle(d, lr.cycle, 8, 1e-9);
      emit(Json{{"certificates", certs},
                {"edge", lr.graph.edge(edge).id},
                {"derivation", derivation_to_json(d)},
                {"valid", val.pass},
                {"inner", solve.success},
                {"inner_residual", solve.residual},
                {"factors", fac.factors},
                {"factor_violation", fac.max_violation},
                {"witnesses", poly_list_json(fac.witnesses)},
                {"continuity_unverified", std::abs(lr.lambda) >= 1.0 - 1e-12}},
           output);
      return val.pass ? kExitOk : kExitViolation;
    }

    if (deriv_profile->parsed()) {
      const LoadedRep lr = build_rep(deriv_profile_flags);
      DerivationAtRep d;
      if (!profile_deriv_file.empty())
        d = derivation_from_json(load_json_file(profile_deriv_file), lr.graph);
      else
        d = default_profile_derivation(lr);
      const NormOracle oracle = make_circle_norm_oracle(lr.graph, lr.cycle, profile_grid);
      const std::vector<ProfilePoint> points =
          derivation_norm_profile(d, parse_int_list(profile_degrees), oracle, run_seed);
      if (output == "md") {
        std::cout << "degree,value\n";
        for (const auto& p : points) std::cout << p.degree << "," << p.value << "\n";
      } else {
        Json arr = Json::array();
        for (const auto& p : points)
          arr.push_back(Json{{"degree", p.degree},
                             {"value", p.value},
                             {"witness", ncpoly_to_json(p.witness)}});
        emit(Json{{"profile", arr}}, output);
      }
      return kExitOk;
    }

    if (char_list->parsed()) {
      const DirectedGraph g = graph_from_json(load_json_file(char_list_file));
      Json arr = Json::array();
      for (const Character& chi : enumerate_character_structures(g))
        arr.push_back(character_to_json(chi));
      emit(Json{{"structures", arr}}, output);
      return kExitOk;
    }

    if (char_deriv->parsed()) {
      const DirectedGraph g = graph_from_json(load_json_file(char_deriv_file));
      int v0 = -1;
      if (!char_v0.empty()) {
        v0 = g.vertex_index(char_v0);
      } else {
        for (int v = 0; v < g.num_vertices(); ++v)
          for (int e = 0; e < g.num_edges(); ++e)
            if (g.source(e) == v && g.range(e) == v && v0 < 0) v0 = v;
        if (v0 < 0) v0 = 0;
      }
      const Character chi = make_character(g, v0, parse_complex_list(char_lambda_str));
      const CharDerivation D = char_derivation(chi, parse_complex_list(char_d_str));
      const auto [d1, d2] = decompose(D);
      const DerivativeFormulaReport formula =
          derivative_formula_check(D, char_samples, char_max_degree, 1e-10, run_seed);
      Json d1j = Json::array(), d2j = Json::array(), dj = Json::array();
      for (const Complex& z : D.d) dj.push_back(complex_to_json(z));
      for (const Complex& z : d1.d) d1j.push_back(complex_to_json(z));
      for (const Complex& z : d2.d) d2j.push_back(complex_to_json(z));
      emit(Json{{"character", character_to_json(chi)},
                {"d", dj},
                {"d1", d1j},
                {"d2", d2j},
                {"derivative_formula",
                 Json{{"pass", formula.pass},
                      {"max_error", formula.max_error},
                      {"samples", formula.samples}}}},
           output);
      return formula.pass ? kExitOk : kExitViolation;
    }

    if (char_boundary->parsed()) {
      const PeakingReport rep = boundary_peaking_witness(
          parse_complex_list(boundary_lambda_str), boundary_grid, boundary_margin);
      emit(Json{{"pass", rep.pass},
                {"peak_value", rep.peak_value},
                {"off_peak_max", rep.off_peak_max},
                {"gap", rep.gap},
                {"grid_points", rep.grid_points}},
           output);
      return rep.pass ? kExitOk : kExitViolation;
    }
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
