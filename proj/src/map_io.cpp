#include "cogmap/map_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cogmap/errors.hpp"

namespace cogmap {

using ordered_json = nlohmann::ordered_json;

namespace {

const ordered_json& require(const ordered_json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(fmt::format("{}: missing field '{}'", where, key));
    return *it;
}

std::string require_string(const ordered_json& obj, const char* key, const char* where) {
    const auto& v = require(obj, key, where);
    if (!v.is_string()) throw ParseError(fmt::format("{}: field '{}' must be a string", where, key));
    return v.get<std::string>();
}

}  // namespace

CausalMap read_map(std::string_view document) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(document.begin(), document.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(fmt::format("malformed map document: {}", e.what()));
    }
    if (!doc.is_object()) throw ParseError("map document must be a JSON object");

    const auto version = require_string(doc, "format_version", "map");
    if (version != kFormatVersion)
        throw ParseError(fmt::format("unsupported format_version '{}'", version));

    CausalMap map;
    map.respondent_id = require_string(doc, "respondent_id", "map");

    const auto& nodes = require(doc, "nodes", "map");
    if (!nodes.is_array()) throw ParseError("map: 'nodes' must be an array");
    for (const auto& jn : nodes) {
        if (!jn.is_object()) throw ParseError("node entries must be objects");
        Node n;
        n.id = require_string(jn, "id", "node");
        const auto kind = require_string(jn, "kind", "node");
        auto k = node_kind_from_string(kind);
        if (!k) throw ParseError(fmt::format("node '{}': unknown kind '{}'", n.id, kind));
        n.kind = *k;
        if (auto it = jn.find("attached_to"); it != jn.end() && !it->is_null()) {
            if (!it->is_string()) throw ParseError(fmt::format("node '{}': attached_to must be a string", n.id));
            n.attached_to = it->get<std::string>();
        }
        if (auto it = jn.find("label"); it != jn.end() && !it->is_null()) {
            if (!it->is_string()) throw ParseError(fmt::format("node '{}': label must be a string", n.id));
            n.label = it->get<std::string>();
        }
        map.nodes.push_back(std::move(n));
    }

    const auto& edges = require(doc, "edges", "map");
    if (!edges.is_array()) throw ParseError("map: 'edges' must be an array");
    for (const auto& je : edges) {
        if (!je.is_object()) throw ParseError("edge entries must be objects");
        Edge e;
        e.from = require_string(je, "from", "edge");
        e.to = require_string(je, "to", "edge");
        const auto& mag = require(je, "magnitude", "edge");
        if (!mag.is_number_integer())
            throw ParseError(fmt::format("edge {} -> {}: magnitude must be an integer", e.from, e.to));
        e.magnitude = mag.get<int>();
        const auto& sign = require(je, "sign", "edge");
        if (sign.is_null()) {
            e.sign = Sign::unknown;
        } else if (sign.is_number_integer() && (sign.get<int>() == 1 || sign.get<int>() == -1)) {
            e.sign = sign.get<int>() == 1 ? Sign::positive : Sign::negative;
        } else {
            throw ParseError(fmt::format("edge {} -> {}: sign must be 1, -1 or null", e.from, e.to));
        }
        map.edges.push_back(std::move(e));
    }
    return map;
}

CausalMap parse_map(std::string_view document) {
    CausalMap map = read_map(document);
    auto report = validate(map);
    if (!report.ok())
        throw ValidationError(fmt::format("map '{}' is invalid:\n{}", map.respondent_id, report.describe()));
    return map;
}

std::string serialize_map(const CausalMap& map) {
    ordered_json doc;
    doc["format_version"] = kFormatVersion;
    doc["respondent_id"] = map.respondent_id;
    doc["nodes"] = ordered_json::array();
    for (const auto& n : map.nodes) {
        ordered_json jn;
        jn["id"] = n.id;
        jn["kind"] = to_string(n.kind);
        if (n.attached_to) jn["attached_to"] = *n.attached_to;
        if (n.label) jn["label"] = *n.label;
        doc["nodes"].push_back(std::move(jn));
    }
    doc["edges"] = ordered_json::array();
    for (const auto& e : map.edges) {
        ordered_json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["magnitude"] = e.magnitude;
        if (e.sign == Sign::unknown)
            je["sign"] = nullptr;
        else
            je["sign"] = static_cast<int>(e.sign);
        doc["edges"].push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

CausalMap load_map_file(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    try {
        return parse_map(text);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void write_map_file(const std::filesystem::path& path, const CausalMap& map) {
    write_text_file(path, serialize_map(map));
}

std::vector<std::filesystem::path> list_map_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<CausalMap> load_dataset(const std::filesystem::path& dir) {
    std::vector<CausalMap> maps;
    std::map<std::string, std::filesystem::path> seen;
    for (const auto& f : list_map_files(dir)) {
        maps.push_back(load_map_file(f));
        const auto [it, fresh] = seen.emplace(maps.back().respondent_id, f);
        if (!fresh)
            throw ValidationError(fmt::format("{}: respondent id '{}' already used by {}", f.string(),
                                              maps.back().respondent_id, it->second.string()));
    }
    return maps;
}

}  // namespace cogmap
