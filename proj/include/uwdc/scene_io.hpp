#pragma once

// Scene and polyline files (JSON, versioned). Every reader throws
// Errc::schema with a path to the offending field.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "uwdc/planar.hpp"
#include "uwdc/scene.hpp"

namespace uwdc {

inline constexpr const char* kSceneVersion = "uwdc-scene/1";
inline constexpr const char* kPolylineVersion = "uwdc-polyline/1";

nlohmann::ordered_json scene_to_json(const Scene& scene);
Scene scene_from_json(const nlohmann::json& j);

std::string write_scene(const Scene& scene);
Scene read_scene(const std::string& text);
Scene load_scene(const std::filesystem::path& path);

nlohmann::ordered_json polyline_to_json(const Polyline& p);
Polyline polyline_from_json(const nlohmann::json& j);
Polyline load_polyline(const std::filesystem::path& path);

/// True if the file holds a polyline rather than a scene.
bool is_polyline_document(const nlohmann::json& j);

}  // namespace uwdc
