#include "thrackle/graph6.hpp"

#include <algorithm>
#include <sstream>

#include "thrackle/document.hpp"
#include "thrackle/errors.hpp"

namespace thrackle {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedGraph6, what); }

int byte_value(char c) {
  const int b = static_cast<unsigned char>(c);
  if (b < 63 || b > 126) malformed("byte " + std::to_string(b) + " outside the range 63..126");
  return b - 63;
}

}  // namespace

AbstractGraph decode_graph6(std::string_view line) {
  if (line.rfind(">>graph6<<", 0) == 0) line.remove_prefix(10);
  if (line.empty()) malformed("empty graph6 string");
  std::size_t pos = 0;
  long long n = 0;
  if (static_cast<unsigned char>(line[0]) != 126) {
    n = byte_value(line[0]);
    pos = 1;
  } else if (line.size() >= 2 && static_cast<unsigned char>(line[1]) != 126) {
    if (line.size() < 4) malformed("truncated size header");
    for (std::size_t k = 1; k <= 3; ++k) n = (n << 6) | byte_value(line[k]);
    pos = 4;
  } else {
    if (line.size() < 8) malformed("truncated size header");
    for (std::size_t k = 2; k <= 7; ++k) n = (n << 6) | byte_value(line[k]);
    pos = 8;
  }
  if (n > 100000) malformed("graph too large");
  const long long bits = n * (n - 1) / 2;
  const long long bytes = (bits + 5) / 6;
  if (static_cast<long long>(line.size() - pos) != bytes) {
    malformed("expected " + std::to_string(bytes) + " data bytes, found " + std::to_string(line.size() - pos));
  }
  std::vector<Edge> edges;
  long long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int b = byte_value(line[pos + static_cast<std::size_t>(k / 6)]);
      if ((b >> (5 - k % 6)) & 1) edges.push_back({i, j});
    }
  }
  for (; k < bytes * 6; ++k) {
    const int b = byte_value(line[pos + static_cast<std::size_t>(k / 6)]);
    if ((b >> (5 - k % 6)) & 1) malformed("nonzero padding bits");
  }
  return AbstractGraph(static_cast<int>(n), std::move(edges));
}

std::string encode_graph6(const AbstractGraph& g) {
  const long long n = g.vertex_count();
  std::string out;
  if (n < 63) {
    out += static_cast<char>(63 + n);
  } else if (n < 258048) {
    out += static_cast<char>(126);
    for (int s = 12; s >= 0; s -= 6) out += static_cast<char>(63 + ((n >> s) & 63));
  } else {
    out += static_cast<char>(126);
    out += static_cast<char>(126);
    for (int s = 30; s >= 0; s -= 6) out += static_cast<char>(63 + ((n >> s) & 63));
  }
  const long long bits = n * (n - 1) / 2;
  std::vector<int> packed(static_cast<std::size_t>((bits + 5) / 6), 0);
  for (const Edge& e : g.edges()) {
    const long long i = std::min(e.u, e.v);
    const long long j = std::max(e.u, e.v);
    const long long k = j * (j - 1) / 2 + i;
    packed[static_cast<std::size_t>(k / 6)] |= 1 << (5 - k % 6);
  }
  for (int b : packed) out += static_cast<char>(63 + b);
  return out;
}

std::vector<AbstractGraph> parse_graph6_lines(std::string_view text) {
  std::vector<AbstractGraph> out;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    if (line.empty()) continue;
    try {
      out.push_back(decode_graph6(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedGraph6, "line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return out;
}

std::vector<AbstractGraph> load_graph6(const std::filesystem::path& path) {
  return parse_graph6_lines(read_file(path));
}

}  // namespace thrackle
