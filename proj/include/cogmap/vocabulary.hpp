#pragma once
// Construct vocabulary for software-engineering success maps.
//
// The 28 canonical constructs are fixed; their order here is the column
// order used by every feature matrix and frequency table. Respondent-added
// constructs live under the `custom:` prefix, and unlabeled antecedent
// placeholders ("other" cards) under `other:`.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogmap {

inline constexpr std::string_view kSesId = "ses";
inline constexpr std::string_view kSesLabel = "Software Engineering Success";
inline constexpr std::string_view kCustomPrefix = "custom:";
inline constexpr std::string_view kOtherPrefix = "other:";
inline constexpr std::size_t kCanonicalCount = 28;

enum class ConstructKind { canonical, custom };

struct Construct {
    std::string id;
    std::string label;
    ConstructKind kind = ConstructKind::canonical;

    bool operator==(const Construct&) const = default;
};

// All 28 canonical constructs in fixed column order.
std::span<const Construct> canonical_constructs();

std::vector<std::string> canonical_ids();

bool is_canonical_id(std::string_view id);

// Column of a canonical id in canonical_constructs(), if any.
std::optional<std::size_t> canonical_index(std::string_view id);

inline bool is_custom_id(std::string_view id) { return id.starts_with(kCustomPrefix); }
inline bool is_other_id(std::string_view id) { return id.starts_with(kOtherPrefix); }

// Makes a custom id from a free-text label: "Time to market" -> "custom:time_to_market".
std::string make_custom_id(std::string_view label);

// Human readable label for any id: canonical label, SES label, the custom
// suffix with underscores as spaces, or "other".
std::string display_label(std::string_view id);

}  // namespace cogmap
