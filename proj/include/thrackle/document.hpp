#pragma once

// Versioned JSON document for drawings. Coordinates are written with 17
// significant digits so that doubles survive a save/load round trip.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "thrackle/drawing.hpp"

namespace thrackle {

inline constexpr int kDrawingFormatVersion = 1;

struct DrawingDocument {
  int format_version = kDrawingFormatVersion;
  Drawing drawing;
  nlohmann::json metadata = nlohmann::json::object();
};

// Edges are written as from = u, to = v with the arc oriented u -> v.
std::string to_document_text(const Drawing& d, const nlohmann::json& metadata = nlohmann::json::object());

// Throws SchemaError (with line and field path) or InvariantError.
DrawingDocument parse_document(std::string_view text, const ToleranceConfig& tol = {});

void save_drawing(const Drawing& d, const std::filesystem::path& path,
                  const nlohmann::json& metadata = nlohmann::json::object());
Drawing load_drawing(const std::filesystem::path& path, const ToleranceConfig& tol = {});
DrawingDocument load_document(const std::filesystem::path& path, const ToleranceConfig& tol = {});

// Writes to a temporary file in the same directory, then renames it over
// the target. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// %.17g formatting used by every machine-readable output.
std::string format_double(double x);

}  // namespace thrackle
