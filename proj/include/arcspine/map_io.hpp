#pragma once

// JSON map files: {darts, alpha, rho, vertex_labels: [{cycle_rep, label}],
// face_punctures: [{face_rep, puncture}], involution?} plus the optional
// fields floating_marked, genus, marked_points and points.

#include "arcspine/ribbon.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <vector>

namespace arcspine {

struct MapFile {
    MapData data;
    std::optional<std::vector<Dart>> involution;
};

nlohmann::json map_to_json(const CombinatorialMap& map,
                           const std::vector<Dart>* involution = nullptr);

/// Throws Error(Io) when the document does not follow the schema.
MapFile map_from_json(const nlohmann::json& doc);

MapFile read_map_file(const std::filesystem::path& path);
void write_map_file(const std::filesystem::path& path, const CombinatorialMap& map,
                    const std::vector<Dart>* involution = nullptr);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace arcspine
