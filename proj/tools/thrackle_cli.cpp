// Command-line front end. Exit status: 0 success, 1 property violation,
// 2 usage or input error, 3 critical (a certified drawing contradicting a
// proven statement).

#include <fmt/core.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "thrackle/construct.hpp"
#include "thrackle/document.hpp"
#include "thrackle/graph6.hpp"
#include "thrackle/render.hpp"
#include "thrackle/report.hpp"

using namespace thrackle;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kCritical = 3;

struct Globals {
  std::optional<double> eps_event;
  std::optional<double> eps_medium;
  std::uint64_t seed = 1;
  bool json = false;
};

// THRACKLE_TOLERANCE holds either a profile name (default, strict, loose) or
// a comma-separated list of key=value pairs, e.g. "eps_event=1e-7".
ToleranceConfig tolerance_from_env() {
  ToleranceConfig tol;
  const char* env = std::getenv("THRACKLE_TOLERANCE");
  if (!env || !*env) return tol;
  const std::string s = env;
  if (s == "default") return tol;
  if (s == "strict") {
    tol.eps_event = 1e-8;
    tol.eps_medium = 1e-8;
    return tol;
  }
  if (s == "loose") {
    tol.eps_event = 1e-5;
    tol.eps_medium = 1e-5;
    return tol;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "THRACKLE_TOLERANCE: bad entry '" + item + "'");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "THRACKLE_TOLERANCE: bad value in '" + item + "'");
    }
    if (key == "eps_unit") tol.eps_unit = value;
    else if (key == "eps_event") tol.eps_event = value;
    else if (key == "eps_medium") tol.eps_medium = value;
    else if (key == "eps_circle") tol.eps_circle = value;
    else throw Error(ErrorCode::InvalidArgument, "THRACKLE_TOLERANCE: unknown key '" + key + "'");
  }
  return tol;
}

ToleranceConfig tolerance(const Globals& g) {
  ToleranceConfig tol = tolerance_from_env();
  if (g.eps_event) tol.eps_event = *g.eps_event;
  if (g.eps_medium) tol.eps_medium = *g.eps_medium;
  tol.validate();
  return tol;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotCertified:
    case ErrorCode::InsertionFailed:
    case ErrorCode::SplitFailed:
    case ErrorCode::CapTooLarge:
      return kViolation;
    default:
      return kUsage;
  }
}

void emit(const Globals& g, const nlohmann::json& report, const std::string& text) {
  if (g.json) {
    std::cout << dump_report(report);
  } else {
    std::cout << text;
  }
}

bool looks_like_document(const std::string& text) {
  const auto k = text.find_first_not_of(" \t\r\n");
  return k != std::string::npos && text[k] == '{';
}

// A graph6 string, a graph6 file or a drawing document.
struct GraphInput {
  std::vector<AbstractGraph> graphs;
  std::optional<Drawing> drawing;
};

GraphInput read_graph_input(const std::string& arg, const ToleranceConfig& tol) {
  GraphInput in;
  if (std::filesystem::is_regular_file(arg)) {
    const std::string text = read_file(arg);
    if (looks_like_document(text)) {
      in.drawing = parse_document(text, tol).drawing;
      in.graphs.push_back(in.drawing->graph());
    } else {
      in.graphs = parse_graph6_lines(text);
    }
  } else {
    in.graphs.push_back(decode_graph6(arg));
  }
  return in;
}

std::string verify_text(const Drawing& d, const ToleranceConfig& tol) {
  const VerificationReport r = verify_thrackle(d, tol);
  std::string out = summarize(r) + "\n";
  if (r.is_thrackle) out += fmt::format("n >= m: {}\nclearance: {:.6g}\n", n_ge_m_check(d, r), clearance(d, tol));
  return out;
}

int cmd_verify(const Globals& g, const std::string& file) {
  const ToleranceConfig tol = tolerance(g);
  const Drawing d = load_drawing(file, tol);
  const nlohmann::json rep = verify_report(d, tol);
  emit(g, rep, verify_text(d, tol));
  const auto& v = rep["verification"];
  return v["is_thrackle"].get<bool>() && v["is_general_position"].get<bool>() ? kOk : kViolation;
}

int cmd_classify(const Globals& g, const std::string& file) {
  const ToleranceConfig tol = tolerance(g);
  const Drawing d = load_drawing(file, tol);
  const nlohmann::json rep = classify_report(d, tol);
  std::string text = "edges:";
  for (const auto& c : rep["length_classes"]) text += " " + c.get<std::string>();
  text += "\n";
  for (const auto& c : rep["cycles"]) {
    std::string signs;
    for (const auto& s : c["chi"]) signs += s.get<int>() > 0 ? '+' : '-';
    text += fmt::format("cycle of length {}: {} [{}], {} long\n", c["length"].get<int>(),
                        c["verdict"].get<std::string>(), signs, c["long_edges"].get<int>());
  }
  text += fmt::format("triangles: {}, bad: {}\n", rep["triangles"]["count"].get<int>(),
                      rep["triangles"]["bad"].size());
  emit(g, rep, text);
  return kOk;
}

int cmd_lemmas(const Globals& g, const std::string& file, const std::vector<std::string>& ids) {
  const ToleranceConfig tol = tolerance(g);
  const Drawing d = load_drawing(file, tol);
  std::vector<LemmaReport> reports;
  if (ids.empty()) {
    reports = check_all(d, tol);
  } else {
    for (const auto& id : ids) reports.push_back(check_lemma(d, parse_lemma_id(id), tol));
  }
  std::string text;
  bool fail = false;
  for (const auto& r : reports) {
    text += fmt::format("{:<14} {:<13} {} configurations\n", to_string(r.id), to_string(r.verdict), r.configurations);
    if (r.witness) text += "  witness: " + r.witness->description + "\n";
    fail = fail || r.verdict == LemmaVerdict::Fail;
  }
  if (fail) text += "CRITICAL: a certified drawing fails a proven statement\n";
  emit(g, lemmas_report(reports, tol), text);
  return fail ? kCritical : kOk;
}

int cmd_construct(const Globals& g, const std::string& family, int n, const std::string& out) {
  if (family != "cycle") throw Error(ErrorCode::InvalidArgument, "unknown family '" + family + "' (expected cycle)");
  const ToleranceConfig tol = tolerance(g);
  const Drawing d = cycle_drawing(n, tol);
  const nlohmann::json meta = {{"family", "cycle"}, {"n", n}};
  if (!out.empty()) save_drawing(d, out, meta);
  nlohmann::json rep = construct_report(n, d, tol);
  if (!out.empty()) rep["path"] = out;
  std::string text = out.empty() ? to_document_text(d, meta) : fmt::format("wrote {}-cycle to {}\n", n, out);
  emit(g, rep, text);
  return rep["certified"].get<bool>() ? kOk : kViolation;
}

SearchConfig search_config(const Globals& g, int budget, int steps, double margin) {
  SearchConfig cfg;
  cfg.tol = tolerance(g);
  cfg.rng_seed = g.seed;
  if (budget > 0) cfg.restarts = budget;
  if (steps > 0) cfg.steps_per_restart = steps;
  cfg.margin = margin > 0 ? margin : cfg.tol.eps_event;
  cfg.validate();
  return cfg;
}

int cmd_search(const Globals& g, const std::string& input, int budget, int steps, double margin,
               const std::string& out) {
  const SearchConfig cfg = search_config(g, budget, steps, margin);
  GraphInput in = read_graph_input(input, cfg.tol);
  if (in.graphs.size() != 1) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("expected one graph, got {} (use falsify for families)", in.graphs.size()));
  }
  const AbstractGraph& graph = in.graphs.front();
  const SearchOutcome o = search_embedding(EmbeddingProblem{graph, {}, in.drawing, {}}, cfg);
  nlohmann::json rep = search_report(graph, o, cfg);
  std::string text = fmt::format("{}: {} (best energy {:.6g}", describe(graph), to_string(o.status), o.best_energy);
  text += o.certified_restart >= 0 ? fmt::format(", restart {})\n", o.certified_restart) : ")\n";
  int code = kOk;
  if (o.drawing) {
    if (!out.empty()) {
      save_drawing(*o.drawing, out, {{"graph6", encode_graph6(graph)}, {"seed", cfg.rng_seed}});
      rep["path"] = out;
      text += "wrote " + out + "\n";
    }
    const bool theorem_setting = graph.is_connected() && !graph.has_terminal_edge();
    if (theorem_setting && graph.edge_count() > graph.vertex_count()) {
      text += "CRITICAL: certified drawing with more edges than vertices\n";
      code = kCritical;
    }
  }
  emit(g, rep, text);
  return code;
}

int cmd_falsify(const Globals& g, const std::string& input, int budget, int steps, double margin) {
  const SearchConfig cfg = search_config(g, budget, steps, margin);
  const GraphInput in = read_graph_input(input, cfg.tol);
  const FalsifyReport r = falsify(in.graphs, cfg);
  std::string text;
  for (const auto& e : r.entries) {
    text += fmt::format("{:<12} {:<22} best energy {:.6g}{}\n", encode_graph6(e.graph), to_string(e.status),
                        e.best_energy, e.note.empty() ? "" : "  " + e.note);
  }
  if (r.critical()) text += "CRITICAL: certified drawing with more edges than vertices\n";
  emit(g, falsify_report(r, cfg), text);
  if (r.critical()) return kCritical;
  return r.has_precondition_violation() ? kUsage : kOk;
}

int cmd_fuzz(const Globals& g, long count) {
  FuzzConfig cfg;
  cfg.count = count;
  cfg.seed = g.seed;
  cfg.tol = tolerance(g);
  const FuzzStats s = run_fuzz(cfg);
  std::string text = fmt::format("{} certified drawings ({} perturbations rejected)\n", s.drawings, s.rejected);
  const auto& ids = all_lemma_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const LemmaTally& t = s.lemmas[i];
    text += fmt::format("{:<14} pass {:>6}  fail {:>3}  n/a {:>6}  configurations {}\n", to_string(ids[i]), t.pass,
                        t.fail, t.not_applicable, t.configurations);
  }
  text += fmt::format("chi antisymmetry: {} events, {} violations\n", s.chi_events, s.chi_antisymmetry_violations);
  text += fmt::format("parity: {} configurations, {} violations\n", s.parity_configurations, s.parity_violations);
  text += fmt::format("n >= m: {} checks, {} violations\n", s.n_ge_m_checks, s.n_ge_m_violations);
  if (s.critical()) text += "CRITICAL\n";
  emit(g, fuzz_report(s, cfg), text);
  return s.critical() ? kCritical : kOk;
}

int cmd_render(const Globals& g, const std::string& file, std::string out, const std::string& projection,
               bool no_dash, bool no_labels) {
  const ToleranceConfig tol = tolerance(g);
  const Drawing d = load_drawing(file, tol);
  RenderSpec spec;
  if (projection == "gnomonic") spec.projection = Projection::Gnomonic;
  else if (projection != "orthographic") throw Error(ErrorCode::InvalidArgument, "unknown projection '" + projection + "'");
  spec.dashed_back_hemisphere = !no_dash;
  spec.labels = !no_labels;
  if (out.empty()) out = std::filesystem::path(file).replace_extension(".svg").string();
  render(d, spec, out);
  emit(g, render_report(out, d, tol), "wrote " + out + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical thrackle toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--eps-event", g.eps_event, "Event separation tolerance (radians)");
  app.add_option("--eps-medium", g.eps_medium, "Exclusion band around length pi (radians)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_flag("--json", g.json, "Machine-readable report on stdout");

  std::string file;
  auto* verify = app.add_subcommand("verify", "Verify that a drawing is a spherical thrackle");
  verify->add_option("file", file)->required();

  auto* classify = app.add_subcommand("classify", "Edge classes, cycle verdicts and bad triangles");
  classify->add_option("file", file)->required();

  std::vector<std::string> ids;
  auto* lemmas = app.add_subcommand("lemmas", "Run the lemma checks on a certified drawing");
  lemmas->add_option("file", file)->required();
  lemmas->add_option("--id", ids, "Lemma id, e.g. L-LONG-E (repeatable)");

  std::string family;
  int n = 0;
  std::string out;
  auto* construct = app.add_subcommand("construct", "Construct a drawing of a cycle");
  construct->add_option("family", family)->required();
  construct->add_option("n", n)->required();
  construct->add_option("-o,--output", out, "Write the drawing here instead of stdout");

  std::string input;
  int budget = 0;
  int steps = 0;
  double margin = 0.0;
  auto* search = app.add_subcommand("search", "Search for a drawing of a graph");
  search->add_option("graph", input, "graph6 string, graph6 file or drawing document (warm start)")->required();
  search->add_option("--budget", budget, "Number of restarts");
  search->add_option("--steps", steps, "Steps per restart");
  search->add_option("--margin", margin, "Certification margin (default eps_event)");
  search->add_option("-o,--output", out, "Write a certified drawing here");

  auto* falsify_cmd = app.add_subcommand("falsify", "Search every graph of a family with more edges than vertices");
  falsify_cmd->add_option("graphs", input, "graph6 string or graph6 file")->required();
  falsify_cmd->add_option("--budget", budget, "Number of restarts per graph");
  falsify_cmd->add_option("--steps", steps, "Steps per restart");
  falsify_cmd->add_option("--margin", margin, "Certification margin (default eps_event)");

  long count = 10000;
  auto* fuzz = app.add_subcommand("fuzz", "Lemma fuzz campaign over certified drawings");
  fuzz->add_option("--count", count, "Number of drawings")->check(CLI::PositiveNumber);

  std::string projection = "orthographic";
  bool no_dash = false;
  bool no_labels = false;
  auto* render_cmd = app.add_subcommand("render", "Render a drawing as SVG");
  render_cmd->add_option("file", file)->required();
  render_cmd->add_option("-o,--output", out, "Output path (default: input with .svg)");
  render_cmd->add_option("--projection", projection, "orthographic or gnomonic");
  render_cmd->add_flag("--no-dash", no_dash, "Draw hidden arcs solid");
  render_cmd->add_flag("--no-labels", no_labels, "Omit vertex labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return cmd_verify(g, file);
    if (*classify) return cmd_classify(g, file);
    if (*lemmas) return cmd_lemmas(g, file, ids);
    if (*construct) return cmd_construct(g, family, n, out);
    if (*search) return cmd_search(g, input, budget, steps, margin, out);
    if (*falsify_cmd) return cmd_falsify(g, input, budget, steps, margin);
    if (*fuzz) return cmd_fuzz(g, count);
    if (*render_cmd) return cmd_render(g, file, out, projection, no_dash, no_labels);
  } catch (const Error& e) {
    if (g.json) std::cout << dump_report(error_report(std::string(to_string(e.code())), e.detail()));
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}
