#pragma once

// SVG output of drawings. Arcs on the far side of the sphere are dashed and
// vertices are filled disks.

#include <filesystem>
#include <string>

#include "thrackle/drawing.hpp"

namespace thrackle {

enum class Projection {
  OrthographicTwoHemispheres,  // two discs: seen from +z and from -z
  Gnomonic,                    // central projection onto the plane z = 1
};

struct RenderSpec {
  Projection projection = Projection::OrthographicTwoHemispheres;
  double panel_size = 360.0;
  double stroke_width = 1.6;
  double vertex_radius = 3.5;
  bool labels = true;
  bool dashed_back_hemisphere = true;
};

std::string render_svg(const Drawing& d, const RenderSpec& spec = {});

// Writes atomically; throws IoError.
void render(const Drawing& d, const RenderSpec& spec, const std::filesystem::path& path);

}  // namespace thrackle
