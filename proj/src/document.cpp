#include "thrackle/document.hpp"

#include <unistd.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace thrackle {

namespace {

using nlohmann::json;

// Finds the line on which the value at a JSON pointer path starts in text
// that is already known to be valid JSON. Used only for diagnostics.
class LineLocator {
 public:
  LineLocator(std::string_view s, std::vector<std::string> target) : s_(s), target_(std::move(target)) {}

  int line() {
    value();
    if (found_ == std::string_view::npos) return 0;
    int n = 1;
    for (std::size_t k = 0; k < found_ && k < s_.size(); ++k) n += s_[k] == '\n';
    return n;
  }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string str() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      if (i_ < s_.size()) out += s_[i_++];
    }
    ++i_;
    return out;
  }
  void value() {
    ws();
    if (path_ == target_ && found_ == std::string_view::npos) found_ = i_;
    if (i_ >= s_.size()) return;
    const char c = s_[i_];
    if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      ws();
      if (i_ < s_.size() && s_[i_] == close) {
        ++i_;
        return;
      }
      for (std::size_t idx = 0; i_ < s_.size(); ++idx) {
        ws();
        if (c == '{') {
          path_.push_back(str());
          ws();
          ++i_;  // ':'
        } else {
          path_.push_back(std::to_string(idx));
        }
        value();
        path_.pop_back();
        ws();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        ++i_;
        return;
      }
    } else if (c == '"') {
      str();
    } else {
      while (i_ < s_.size() && !std::strchr(",]} \t\r\n", s_[i_])) ++i_;
    }
  }

  std::string_view s_;
  std::vector<std::string> target_;
  std::vector<std::string> path_;
  std::size_t i_ = 0;
  std::size_t found_ = std::string_view::npos;
};

class SchemaReader {
 public:
  explicit SchemaReader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& problem) const {
    // Report the line of the deepest existing ancestor of the field.
    int line = 0;
    for (std::size_t k = path.size() + 1; k-- > 0 && line == 0;) {
      line = LineLocator(text_, std::vector<std::string>(path.begin(), path.begin() + static_cast<long>(k))).line();
    }
    std::string p;
    for (const auto& s : path) p += "/" + s;
    std::ostringstream os;
    os << "line " << line << ", field " << (p.empty() ? "/" : p) << ": " << problem;
    throw Error(ErrorCode::SchemaError, os.str());
  }

  const json& member(const json& obj, const std::vector<std::string>& path, const std::string& key) const {
    auto it = obj.find(key);
    auto child = path;
    child.push_back(key);
    if (it == obj.end()) fail(child, "missing required field");
    return *it;
  }

  long long integer(const json& obj, const std::vector<std::string>& path, const std::string& key) const {
    const json& v = member(obj, path, key);
    auto child = path;
    child.push_back(key);
    if (!v.is_number_integer()) fail(child, "expected an integer");
    return v.get<long long>();
  }

  double number(const json& obj, const std::vector<std::string>& path, const std::string& key) const {
    const json& v = member(obj, path, key);
    auto child = path;
    child.push_back(key);
    if (!v.is_number()) fail(child, "expected a number");
    return v.get<double>();
  }

  const json& array(const json& obj, const std::vector<std::string>& path, const std::string& key) const {
    const json& v = member(obj, path, key);
    auto child = path;
    child.push_back(key);
    if (!v.is_array()) fail(child, "expected an array");
    return v;
  }

 private:
  std::string_view text_;
};

[[noreturn]] void invariant(const std::string& what) { throw Error(ErrorCode::InvariantError, what); }

UnitVector unit_or_throw(const Vec3& v, const ToleranceConfig& tol, const std::string& what) {
  if (!std::isfinite(v.x()) || !std::isfinite(v.y()) || !std::isfinite(v.z()) ||
      std::fabs(v.norm() - 1.0) > 10.0 * tol.eps_unit) {
    invariant(what + " is not a unit vector");
  }
  return UnitVector::from_normalized(v);
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_document_text(const Drawing& d, const nlohmann::json& metadata) {
  const AbstractGraph& g = d.graph();
  std::ostringstream os;
  os << "{\n  \"format_version\": " << kDrawingFormatVersion << ",\n  \"vertices\": [";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const UnitVector& p = d.position(v);
    os << (v ? ",\n" : "\n") << "    {\"id\": " << v << ", \"x\": " << format_double(p.x())
       << ", \"y\": " << format_double(p.y()) << ", \"z\": " << format_double(p.z()) << "}";
  }
  os << (g.vertex_count() ? "\n  ],\n" : "],\n") << "  \"edges\": [";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const Arc a = d.directed_arc({e, true});
    const Vec3& q = a.pole().vec();
    os << (e ? ",\n" : "\n") << "    {\"id\": " << e << ", \"from\": " << ed.u << ", \"to\": " << ed.v
       << ", \"pole\": [" << format_double(q.x()) << ", " << format_double(q.y()) << ", " << format_double(q.z())
       << "], \"angle\": " << format_double(a.angle()) << "}";
  }
  os << (g.edge_count() ? "\n  ],\n" : "],\n") << "  \"metadata\": "
     << (metadata.is_null() ? std::string("{}") : metadata.dump()) << "\n}\n";
  return os.str();
}

DrawingDocument parse_document(std::string_view text, const ToleranceConfig& tol) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t k = 0; k + 1 < upto; ++k) line += text[k] == '\n';
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
  SchemaReader rd(text);
  if (!root.is_object()) rd.fail({}, "document must be an object");

  DrawingDocument doc;
  doc.format_version = static_cast<int>(rd.integer(root, {}, "format_version"));
  if (doc.format_version != kDrawingFormatVersion) {
    rd.fail({"format_version"}, "unsupported version " + std::to_string(doc.format_version));
  }

  const json& vs = rd.array(root, {}, "vertices");
  const int n = static_cast<int>(vs.size());
  std::vector<std::optional<UnitVector>> slots(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const std::vector<std::string> path = {"vertices", std::to_string(k)};
    const json& v = vs[static_cast<std::size_t>(k)];
    if (!v.is_object()) rd.fail(path, "expected an object");
    const long long id = rd.integer(v, path, "id");
    if (id < 0 || id >= n) rd.fail({"vertices", std::to_string(k), "id"}, "id out of range");
    if (slots[static_cast<std::size_t>(id)]) rd.fail({"vertices", std::to_string(k), "id"}, "duplicate id");
    const Vec3 p(rd.number(v, path, "x"), rd.number(v, path, "y"), rd.number(v, path, "z"));
    slots[static_cast<std::size_t>(id)] = unit_or_throw(p, tol, "vertex " + std::to_string(id));
  }
  std::vector<UnitVector> positions;
  for (const auto& s : slots) positions.push_back(*s);

  const json& es = rd.array(root, {}, "edges");
  const int m = static_cast<int>(es.size());
  std::vector<std::optional<std::pair<Edge, Arc>>> eslots(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const std::vector<std::string> path = {"edges", std::to_string(k)};
    const json& e = es[static_cast<std::size_t>(k)];
    if (!e.is_object()) rd.fail(path, "expected an object");
    const long long id = rd.integer(e, path, "id");
    if (id < 0 || id >= m) rd.fail({"edges", std::to_string(k), "id"}, "id out of range");
    if (eslots[static_cast<std::size_t>(id)]) rd.fail({"edges", std::to_string(k), "id"}, "duplicate id");
    const long long from = rd.integer(e, path, "from");
    const long long to = rd.integer(e, path, "to");
    if (from < 0 || from >= n) rd.fail({"edges", std::to_string(k), "from"}, "vertex out of range");
    if (to < 0 || to >= n) rd.fail({"edges", std::to_string(k), "to"}, "vertex out of range");
    const json& pole = rd.array(e, path, "pole");
    if (pole.size() != 3) rd.fail({"edges", std::to_string(k), "pole"}, "expected three numbers");
    for (std::size_t c = 0; c < 3; ++c) {
      if (!pole[c].is_number()) rd.fail({"edges", std::to_string(k), "pole", std::to_string(c)}, "expected a number");
    }
    const double angle = rd.number(e, path, "angle");
    const UnitVector q = unit_or_throw(Vec3(pole[0].get<double>(), pole[1].get<double>(), pole[2].get<double>()), tol,
                                       "pole of edge " + std::to_string(id));
    try {
      Arc arc(positions[static_cast<std::size_t>(from)], positions[static_cast<std::size_t>(to)], q, angle, tol);
      eslots[static_cast<std::size_t>(id)] = std::make_pair(Edge{static_cast<int>(from), static_cast<int>(to)}, arc);
    } catch (const Error& err) {
      invariant("edge " + std::to_string(id) + ": " + err.what());
    }
  }
  std::vector<Edge> edges;
  std::vector<Arc> arcs;
  for (const auto& s : eslots) {
    edges.push_back(s->first);
    arcs.push_back(s->second);
  }
  try {
    doc.drawing = Drawing(AbstractGraph(n, std::move(edges)), std::move(positions), std::move(arcs), tol);
  } catch (const Error& err) {
    invariant(err.what());
  }
  if (auto it = root.find("metadata"); it != root.end()) doc.metadata = *it;
  return doc;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move output into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void save_drawing(const Drawing& d, const std::filesystem::path& path, const nlohmann::json& metadata) {
  write_file_atomic(path, to_document_text(d, metadata));
}

DrawingDocument load_document(const std::filesystem::path& path, const ToleranceConfig& tol) {
  return parse_document(read_file(path), tol);
}

Drawing load_drawing(const std::filesystem::path& path, const ToleranceConfig& tol) {
  return load_document(path, tol).drawing;
}

}  // namespace thrackle
