#pragma once

// Machine-readable reports. Every report is a JSON object with "report"
// naming its kind and "schema_version"; schemas/report.schema.json describes
// all of them. Keys come out sorted and numbers in shortest round-trip form,
// so equal inputs give byte-identical text.

#include <string>

#include "json.hpp"
#include "thrackle/fuzz.hpp"
#include "thrackle/search.hpp"

namespace thrackle {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json tolerance_json(const ToleranceConfig& tol);
nlohmann::json graph_json(const AbstractGraph& g);
nlohmann::json drawing_json(const Drawing& d);

nlohmann::json verification_json(const Drawing& d, const VerificationReport& r, const GeneralPositionReport& gp);
nlohmann::json lemma_json(const LemmaReport& r);

// Envelopes. Each adds "report", "schema_version" and "tolerance".
nlohmann::json verify_report(const Drawing& d, const ToleranceConfig& tol);
// Edge classes, every simple cycle with its verdict, and the bad-triangle
// scan. Throws NotCertified.
nlohmann::json classify_report(const Drawing& d, const ToleranceConfig& tol);
nlohmann::json lemmas_report(const std::vector<LemmaReport>& reports, const ToleranceConfig& tol);
nlohmann::json construct_report(int n, const Drawing& d, const ToleranceConfig& tol);
nlohmann::json search_report(const AbstractGraph& g, const SearchOutcome& o, const SearchConfig& cfg);
nlohmann::json falsify_report(const FalsifyReport& r, const SearchConfig& cfg);
nlohmann::json fuzz_report(const FuzzStats& s, const FuzzConfig& cfg);
nlohmann::json render_report(const std::string& path, const Drawing& d, const ToleranceConfig& tol);
nlohmann::json error_report(const std::string& code, const std::string& message);

// Indented text with a trailing newline.
std::string dump_report(const nlohmann::json& j);

}  // namespace thrackle
