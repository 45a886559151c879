#include "thrackle/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "thrackle/document.hpp"

namespace thrackle {

namespace {

constexpr const char* kPalette[] = {"#1f4e79", "#a23b2a", "#2e7d32", "#6a3d9a", "#b8860b", "#00796b", "#c2185b", "#455a64"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

struct Pt {
  double x;
  double y;
  bool visible;  // front side for orthographic views, drawable for gnomonic
};

std::vector<Vec3> sample_arc(const Arc& a) {
  const int steps = std::max(8, static_cast<int>(std::ceil(a.angle() / (kPi / 90.0))));
  std::vector<Vec3> out;
  for (int i = 0; i <= steps; ++i) out.push_back(a.point_at(a.angle() * i / steps).vec());
  return out;
}

void polyline(std::ostringstream& os, const std::vector<Pt>& run, const std::string& color, double width, bool dashed) {
  if (run.size() < 2) return;
  os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(width) << "\"";
  if (dashed) os << " stroke-dasharray=\"5,4\"";
  os << " points=\"";
  for (std::size_t i = 0; i < run.size(); ++i) os << (i ? " " : "") << num(run[i].x) << "," << num(run[i].y);
  os << "\"/>\n";
}

// Splits a projected sample sequence into maximal runs of equal visibility.
// Invisible runs are dashed when `draw_hidden` is set and dropped otherwise.
void emit_runs(std::ostringstream& os, const std::vector<Pt>& pts, const std::string& color, double width,
               bool draw_hidden) {
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    while (j + 1 < pts.size() && pts[j + 1].visible == pts[i].visible) ++j;
    std::vector<Pt> run(pts.begin() + static_cast<long>(i), pts.begin() + static_cast<long>(j) + 1);
    // Join consecutive runs so the polyline has no gaps.
    if (j + 1 < pts.size()) run.push_back(pts[j + 1]);
    if (pts[i].visible) {
      polyline(os, run, color, width, false);
    } else if (draw_hidden) {
      polyline(os, run, color, width, true);
    }
    i = j + 1;
  }
}

void orthographic_panel(std::ostringstream& os, const Drawing& d, const RenderSpec& spec, double ox, bool from_top) {
  const double r = spec.panel_size * 0.45;
  const double cx = ox + spec.panel_size / 2;
  const double cy = spec.panel_size / 2;
  const double flip = from_top ? 1.0 : -1.0;
  auto project = [&](const Vec3& p) {
    return Pt{cx + flip * r * p.x(), cy - r * p.y(), flip * p.z() >= 0.0};
  };
  os << "  <circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.00\"/>\n";
  os << "  <text x=\"" << num(ox + 8) << "\" y=\"16.00\" font-size=\"12\" font-family=\"sans-serif\">"
     << (from_top ? "seen from +z" : "seen from -z") << "</text>\n";
  for (EdgeId e = 0; e < d.graph().edge_count(); ++e) {
    std::vector<Pt> pts;
    for (const Vec3& p : sample_arc(d.arc(e))) pts.push_back(project(p));
    emit_runs(os, pts, kPalette[e % 8], spec.stroke_width, spec.dashed_back_hemisphere);
  }
  for (VertexId v = 0; v < d.graph().vertex_count(); ++v) {
    const Pt q = project(d.position(v).vec());
    os << "  <circle cx=\"" << num(q.x) << "\" cy=\"" << num(q.y) << "\" r=\"" << num(spec.vertex_radius)
       << "\" fill=\"" << (q.visible ? "#000000" : "#ffffff") << "\" stroke=\"#000000\" stroke-width=\"1.00\"/>\n";
    if (spec.labels) {
      os << "  <text x=\"" << num(q.x + 5) << "\" y=\"" << num(q.y - 5)
         << "\" font-size=\"11\" font-family=\"sans-serif\">" << v << "</text>\n";
    }
  }
}

void gnomonic_panel(std::ostringstream& os, const Drawing& d, const RenderSpec& spec) {
  constexpr double kMinZ = 0.05;
  double extent = 1e-9;
  for (const UnitVector& p : d.positions()) {
    if (p.z() > kMinZ) extent = std::max({extent, std::fabs(p.x() / p.z()), std::fabs(p.y() / p.z())});
  }
  const double s = spec.panel_size * 0.45 / extent;
  const double c = spec.panel_size / 2;
  auto project = [&](const Vec3& p) {
    const bool ok = p.z() > kMinZ;
    return Pt{ok ? c + s * p.x() / p.z() : c, ok ? c - s * p.y() / p.z() : c, ok};
  };
  os << "  <rect x=\"0.00\" y=\"0.00\" width=\"" << num(spec.panel_size) << "\" height=\"" << num(spec.panel_size)
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.00\"/>\n";
  for (EdgeId e = 0; e < d.graph().edge_count(); ++e) {
    std::vector<Pt> pts;
    for (const Vec3& p : sample_arc(d.arc(e))) pts.push_back(project(p));
    std::vector<Pt> run;
    for (const Pt& q : pts) {
      if (q.visible) {
        run.push_back(q);
      } else {
        polyline(os, run, kPalette[e % 8], spec.stroke_width, false);
        run.clear();
      }
    }
    polyline(os, run, kPalette[e % 8], spec.stroke_width, false);
  }
  for (VertexId v = 0; v < d.graph().vertex_count(); ++v) {
    const Pt q = project(d.position(v).vec());
    if (!q.visible) continue;
    os << "  <circle cx=\"" << num(q.x) << "\" cy=\"" << num(q.y) << "\" r=\"" << num(spec.vertex_radius)
       << "\" fill=\"#000000\"/>\n";
    if (spec.labels) {
      os << "  <text x=\"" << num(q.x + 5) << "\" y=\"" << num(q.y - 5)
         << "\" font-size=\"11\" font-family=\"sans-serif\">" << v << "</text>\n";
    }
  }
}

}  // namespace

std::string render_svg(const Drawing& d, const RenderSpec& spec) {
  const bool two = spec.projection == Projection::OrthographicTwoHemispheres;
  const double width = two ? 2 * spec.panel_size : spec.panel_size;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(spec.panel_size)
     << "\" viewBox=\"0 0 " << num(width) << " " << num(spec.panel_size) << "\">\n"
     << "  <rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(spec.panel_size)
     << "\" fill=\"#ffffff\"/>\n";
  if (two) {
    orthographic_panel(os, d, spec, 0.0, true);
    orthographic_panel(os, d, spec, spec.panel_size, false);
  } else {
    gnomonic_panel(os, d, spec);
  }
  os << "</svg>\n";
  return os.str();
}

void render(const Drawing& d, const RenderSpec& spec, const std::filesystem::path& path) {
  write_file_atomic(path, render_svg(d, spec));
}

}  // namespace thrackle
