#pragma once
// Canonical map file format (JSON, format_version "1.0"):
//
//   {
//     "format_version": "1.0",
//     "respondent_id": "r17",
//     "nodes": [ {"id": "ses", "kind": "ses"},
//                {"id": "team_quality", "kind": "construct"},
//                {"id": "other:team_quality", "kind": "other", "attached_to": "team_quality"},
//                {"id": "custom:time_to_market", "kind": "custom", "label": "time to market"} ],
//     "edges": [ {"from": "team_quality", "to": "ses", "magnitude": 2, "sign": 1},
//                {"from": "other:team_quality", "to": "team_quality", "magnitude": 1, "sign": null} ]
//   }
//
// A dataset is a directory of such files, read in filename order.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cogmap/causal_map.hpp"

namespace cogmap {

inline constexpr std::string_view kFormatVersion = "1.0";

// Structural read only; throws ParseError. The result may violate invariants.
CausalMap read_map(std::string_view document);

// read_map + validate; throws ValidationError listing every violated invariant.
CausalMap parse_map(std::string_view document);

std::string serialize_map(const CausalMap& map);

CausalMap load_map_file(const std::filesystem::path& path);
void write_map_file(const std::filesystem::path& path, const CausalMap& map);

// Map files (*.json) in a directory, sorted by filename.
std::vector<std::filesystem::path> list_map_files(const std::filesystem::path& dir);

// Parses and validates every map in the directory; errors name the file.
// Respondent ids must be unique across the dataset.
std::vector<CausalMap> load_dataset(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cogmap
