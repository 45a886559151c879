#include <gtest/gtest.h>

#include <filesystem>

#include "thrackle/construct.hpp"
#include "thrackle/document.hpp"
#include "thrackle/render.hpp"

namespace thrackle {
namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto k = s.find(needle); k != std::string::npos; k = s.find(needle, k + 1)) ++n;
  return n;
}

TEST(Render, SixCycleHasBothHemispheres) {
  const std::string svg = render_svg(six_cycle_drawing());
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_GT(count(svg, "stroke-dasharray"), 0);
  EXPECT_GE(count(svg, "<circle"), 6);
}

TEST(Render, NoDashesWhenDisabled) {
  RenderSpec spec;
  spec.dashed_back_hemisphere = false;
  EXPECT_EQ(count(render_svg(six_cycle_drawing(), spec), "stroke-dasharray"), 0);
}

TEST(Render, Deterministic) {
  const Drawing d = cycle_drawing(8);
  EXPECT_EQ(render_svg(d), render_svg(d));
  RenderSpec g;
  g.projection = Projection::Gnomonic;
  EXPECT_EQ(render_svg(d, g), render_svg(d, g));
}

TEST(Render, EmptyDrawingIsValid) {
  const std::string svg = render_svg(Drawing());
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(svg, "<polyline"), 0);
}

TEST(Render, WritesFileAndReportsIoError) {
  const auto path = std::filesystem::temp_directory_path() / "thrackle_render_test.svg";
  render(six_cycle_drawing(), {}, path);
  EXPECT_EQ(read_file(path), render_svg(six_cycle_drawing()));
  std::filesystem::remove(path);
  try {
    render(six_cycle_drawing(), {}, "/nonexistent/dir/x.svg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

}  // namespace
}  // namespace thrackle
