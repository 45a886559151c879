#include "thrackle/report.hpp"

#include "thrackle/graph6.hpp"

namespace thrackle {

using nlohmann::json;

namespace {

json envelope(const char* kind, const ToleranceConfig& tol) {
  return json{{"report", kind}, {"schema_version", kReportSchemaVersion}, {"tolerance", tolerance_json(tol)}};
}

json vec_json(const UnitVector& p) { return json::array({p.x(), p.y(), p.z()}); }

json witness_json(const LemmaWitness& w) {
  return json{{"description", w.description}, {"edges", w.edges}, {"vertices", w.vertices}, {"signs", w.signs}};
}

json violation_json(const ViolationRecord& v) {
  json j{{"reason", std::string(to_string(v.reason))}};
  if (v.e >= 0) j["e"] = v.e;
  if (v.f >= 0) j["f"] = v.f;
  if (v.vertex >= 0) j["vertex"] = v.vertex;
  return j;
}

json directed_json(const std::vector<DirectedEdge>& walk) {
  json a = json::array();
  for (const auto& de : walk) a.push_back(json{{"edge", de.edge}, {"forward", de.forward}});
  return a;
}

json search_config_json(const SearchConfig& cfg) {
  return json{{"restarts", cfg.restarts},
              {"steps_per_restart", cfg.steps_per_restart},
              {"initial_temperature", cfg.initial_temperature},
              {"final_temperature", cfg.final_temperature},
              {"rng_seed", cfg.rng_seed},
              {"margin", cfg.margin},
              {"flag_flip_probability", cfg.flag_flip_probability}};
}

}  // namespace

json tolerance_json(const ToleranceConfig& tol) {
  return json{{"eps_unit", tol.eps_unit},
              {"eps_event", tol.eps_event},
              {"eps_medium", tol.eps_medium},
              {"eps_circle", tol.eps_circle}};
}

json graph_json(const AbstractGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(json::array({e.u, e.v}));
  return json{{"vertices", g.vertex_count()}, {"edges", edges}, {"graph6", encode_graph6(g)}};
}

json drawing_json(const Drawing& d) {
  json vs = json::array();
  for (VertexId v = 0; v < d.graph().vertex_count(); ++v) vs.push_back(vec_json(d.position(v)));
  json es = json::array();
  for (EdgeId e = 0; e < d.graph().edge_count(); ++e) {
    const Arc a = d.directed_arc({e, true});
    es.push_back(json{{"from", d.graph().edge(e).u},
                      {"to", d.graph().edge(e).v},
                      {"pole", vec_json(a.pole())},
                      {"angle", a.angle()},
                      {"class", std::string(to_string(a.length_class()))}});
  }
  return json{{"vertices", vs}, {"edges", es}};
}

json verification_json(const Drawing& d, const VerificationReport& r, const GeneralPositionReport& gp) {
  json pairs = json::array();
  long crossings = 0;
  for (const PairRecord& p : r.pair_table) {
    json events = json::array();
    for (const auto& ev : p.events) {
      crossings += ev.kind == EventKind::ProperCrossing;
      events.push_back(json{{"kind", std::string(to_string(ev.kind))}, {"point", vec_json(ev.point)}});
    }
    pairs.push_back(json{{"e", p.e}, {"f", p.f}, {"adjacent", p.adjacent}, {"events", events}});
  }
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back(violation_json(v));
  json flags = json::array();
  for (const auto& v : gp.flags) flags.push_back(violation_json(v));
  return json{{"is_thrackle", r.is_thrackle},
              {"is_general_position", r.is_general_position && gp.ok()},
              {"vertices", d.graph().vertex_count()},
              {"edges", d.graph().edge_count()},
              {"proper_crossings", crossings},
              {"pairs", pairs},
              {"violations", violations},
              {"general_position_flags", flags}};
}

json lemma_json(const LemmaReport& r) {
  json j{{"id", std::string(to_string(r.id))},
         {"verdict", std::string(to_string(r.verdict))},
         {"configurations", r.configurations},
         {"note", r.note}};
  j["witness"] = r.witness ? witness_json(*r.witness) : json(nullptr);
  return j;
}

json verify_report(const Drawing& d, const ToleranceConfig& tol) {
  json j = envelope("verify", tol);
  const VerificationReport r = verify_thrackle(d, tol);
  j["verification"] = verification_json(d, r, check_general_position(d, tol));
  j["n_ge_m"] = r.is_thrackle ? json(n_ge_m_check(d, r)) : json(nullptr);
  j["clearance"] = r.is_thrackle ? json(clearance(d, tol)) : json(nullptr);
  return j;
}

json classify_report(const Drawing& d, const ToleranceConfig& tol) {
  const TriangleScan scan = find_bad_triangles(d, tol);
  json j = envelope("classify", tol);
  const AbstractGraph& g = d.graph();
  json classes = json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) classes.push_back(std::string(to_string(d.arc(e).length_class())));
  json cycles = json::array();
  for (const auto& c : g.simple_cycles()) {
    const PathClass pc = classify_cycle(d, c, tol);
    long longs = 0;
    for (const auto& de : c) longs += d.arc(de.edge).length_class() == LengthClass::Long;
    cycles.push_back(json{{"walk", directed_json(c)},
                          {"length", c.size()},
                          {"verdict", std::string(to_string(pc.verdict))},
                          {"chi", pc.chi_sequence},
                          {"long_edges", longs}});
  }
  json bad = json::array();
  for (const auto& t : scan.bad) {
    bad.push_back(json{{"edges", t.edges},
                       {"vertices", t.vertices},
                       {"chi_at_vertices", t.chi_at_vertices},
                       {"long_edge_count", t.long_edge_count},
                       {"long_edge", t.long_edge},
                       {"long_edge_vertices_agree", t.long_edge_vertices_agree}});
  }
  j["length_classes"] = classes;
  j["cycles"] = cycles;
  j["triangles"] = json{{"count", scan.triangle_count}, {"bad", bad}, {"multiple", scan.multiple_triangles}};
  return j;
}

json lemmas_report(const std::vector<LemmaReport>& reports, const ToleranceConfig& tol) {
  json j = envelope("lemmas", tol);
  json arr = json::array();
  bool fail = false;
  for (const auto& r : reports) {
    arr.push_back(lemma_json(r));
    fail = fail || r.verdict == LemmaVerdict::Fail;
  }
  j["lemmas"] = arr;
  j["critical"] = fail;
  return j;
}

json construct_report(int n, const Drawing& d, const ToleranceConfig& tol) {
  json j = envelope("construct", tol);
  j["family"] = "cycle";
  j["n"] = n;
  j["graph"] = graph_json(d.graph());
  j["drawing"] = drawing_json(d);
  const VerificationReport r = verify_thrackle(d, tol);
  j["certified"] = r.is_thrackle && r.is_general_position;
  j["clearance"] = clearance(d, tol);
  return j;
}

json search_report(const AbstractGraph& g, const SearchOutcome& o, const SearchConfig& cfg) {
  json j = envelope("search", cfg.tol);
  j["graph"] = graph_json(g);
  j["config"] = search_config_json(cfg);
  j["status"] = std::string(to_string(o.status));
  j["best_energy"] = o.best_energy;
  j["certified_restart"] = o.certified_restart;
  j["energy_trace"] = o.energy_trace;
  j["drawing"] = o.drawing ? drawing_json(*o.drawing) : json(nullptr);
  j["n_ge_m"] = o.drawing ? json(n_ge_m_check(*o.drawing, cfg.tol.with_event(cfg.margin))) : json(nullptr);
  return j;
}

json falsify_report(const FalsifyReport& r, const SearchConfig& cfg) {
  json j = envelope("falsify", cfg.tol);
  j["config"] = search_config_json(cfg);
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back(json{{"graph", graph_json(e.graph)},
                           {"status", std::string(to_string(e.status))},
                           {"best_energy", e.best_energy},
                           {"note", e.note},
                           {"drawing", e.drawing ? drawing_json(*e.drawing) : json(nullptr)}});
  }
  j["entries"] = entries;
  j["critical"] = r.critical();
  return j;
}

json fuzz_report(const FuzzStats& s, const FuzzConfig& cfg) {
  json j = envelope("fuzz", cfg.tol);
  j["count"] = cfg.count;
  j["seed"] = cfg.seed;
  j["drawings"] = s.drawings;
  j["rejected"] = s.rejected;
  j["by_source"] = s.by_source;
  json lemmas = json::object();
  const auto& ids = all_lemma_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const LemmaTally& t = s.lemmas[i];
    lemmas[std::string(to_string(ids[i]))] = json{
        {"pass", t.pass}, {"fail", t.fail}, {"not_applicable", t.not_applicable}, {"configurations", t.configurations}};
  }
  j["lemmas"] = lemmas;
  j["chi_antisymmetry"] = json{{"events", s.chi_events}, {"violations", s.chi_antisymmetry_violations}};
  j["parity"] = json{{"configurations", s.parity_configurations}, {"violations", s.parity_violations}};
  j["n_ge_m"] = json{{"checks", s.n_ge_m_checks}, {"violations", s.n_ge_m_violations}};
  json failures = json::array();
  for (const auto& f : s.failures) {
    failures.push_back(json{{"source", f.source}, {"lemma", lemma_json(f.report)}, {"drawing", drawing_json(f.drawing)}});
  }
  j["failures"] = failures;
  j["critical"] = s.critical();
  return j;
}

json render_report(const std::string& path, const Drawing& d, const ToleranceConfig& tol) {
  json j = envelope("render", tol);
  j["path"] = path;
  j["vertices"] = d.graph().vertex_count();
  j["edges"] = d.graph().edge_count();
  return j;
}

json error_report(const std::string& code, const std::string& message) {
  return json{{"report", "error"}, {"schema_version", kReportSchemaVersion}, {"code", code}, {"message", message}};
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

}  // namespace thrackle
