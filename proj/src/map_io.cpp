#include "arcspine/map_io.hpp"

#include <fstream>

namespace arcspine {

using nlohmann::json;

namespace {

Label parse_label(const json& v) {
    if (v.is_number_integer()) {
        return v.get<int>();
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.size() > 1 && (s[0] == 'p' || s[0] == 'P')) {
            try {
                return std::stoi(s.substr(1));
            } catch (const std::exception&) {
            }
        }
    }
    throw Error(ErrorCode::Io, "labels must be integers or strings of the form p<k>");
}

std::vector<Dart> parse_permutation(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_array()) {
        throw Error(ErrorCode::Io, std::string("missing array field '") + key + "'");
    }
    std::vector<Dart> out;
    for (const json& v : doc.at(key)) {
        if (!v.is_number_integer()) {
            throw Error(ErrorCode::Io, std::string("field '") + key + "' must hold integers");
        }
        out.push_back(v.get<int>());
    }
    return out;
}

std::vector<LabelAt> parse_labels(const json& doc, const char* key, const char* rep_key,
                                  const char* label_key) {
    std::vector<LabelAt> out;
    if (!doc.contains(key)) {
        return out;
    }
    if (!doc.at(key).is_array()) {
        throw Error(ErrorCode::Io, std::string("field '") + key + "' must be an array");
    }
    for (const json& item : doc.at(key)) {
        if (!item.is_object() || !item.contains(rep_key) || !item.contains(label_key) ||
            !item.at(rep_key).is_number_integer()) {
            throw Error(ErrorCode::Io, std::string("entries of '") + key + "' need '" + rep_key +
                                           "' and '" + label_key + "'");
        }
        out.push_back({item.at(rep_key).get<int>(), parse_label(item.at(label_key))});
    }
    return out;
}

std::optional<int> optional_int(const json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) {
        return std::nullopt;
    }
    if (!doc.at(key).is_number_integer()) {
        throw Error(ErrorCode::Io, std::string("field '") + key + "' must be an integer");
    }
    return doc.at(key).get<int>();
}

}  // namespace

json map_to_json(const CombinatorialMap& map, const std::vector<Dart>* involution) {
    const MapData data = map.to_data();
    json doc;
    doc["darts"] = data.darts;
    doc["alpha"] = data.alpha;
    doc["rho"] = data.rho;
    json labels = json::array();
    for (const LabelAt& la : data.vertex_labels) {
        labels.push_back({{"cycle_rep", la.rep}, {"label", la.label}});
    }
    doc["vertex_labels"] = labels;
    json punctures = json::array();
    for (const LabelAt& la : data.face_punctures) {
        punctures.push_back({{"face_rep", la.rep}, {"puncture", la.label}});
    }
    doc["face_punctures"] = punctures;
    if (!data.floating.empty()) {
        json floating = json::array();
        for (const LabelAt& la : data.floating) {
            floating.push_back({{"face_rep", la.rep}, {"label", la.label}});
        }
        doc["floating_marked"] = floating;
    }
    doc["genus"] = map.genus();
    doc["marked_points"] = map.marked_count();
    doc["points"] = map.point_count();
    if (involution != nullptr) {
        doc["involution"] = *involution;
    }
    return doc;
}

MapFile map_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw Error(ErrorCode::Io, "map file must be a JSON object");
    }
    MapFile file;
    const auto darts = optional_int(doc, "darts");
    if (!darts) {
        throw Error(ErrorCode::Io, "missing integer field 'darts'");
    }
    file.data.darts = *darts;
    file.data.alpha = parse_permutation(doc, "alpha");
    file.data.rho = parse_permutation(doc, "rho");
    file.data.vertex_labels = parse_labels(doc, "vertex_labels", "cycle_rep", "label");
    file.data.face_punctures = parse_labels(doc, "face_punctures", "face_rep", "puncture");
    file.data.floating = parse_labels(doc, "floating_marked", "face_rep", "label");
    file.data.genus = optional_int(doc, "genus");
    file.data.marked = optional_int(doc, "marked_points");
    file.data.points = optional_int(doc, "points");
    if (doc.contains("involution") && !doc.at("involution").is_null()) {
        file.involution = parse_permutation(doc, "involution");
    }
    return file;
}

MapFile read_map_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, path.string() + ": " + e.what());
    }
    return map_from_json(doc);
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

void write_map_file(const std::filesystem::path& path, const CombinatorialMap& map,
                    const std::vector<Dart>* involution) {
    write_json_file(path, map_to_json(map, involution));
}

}  // namespace arcspine
