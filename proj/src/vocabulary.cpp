#include "cogmap/vocabulary.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace cogmap {

namespace {

const std::array<Construct, kCanonicalCount> kCanonical = {{
    {"appropriateness_of_methodology", "appropriateness of methodology"},
    {"appropriateness_of_programming_paradigm", "appropriateness of programming paradigm"},
    {"comprehension_of_software_specifications", "comprehension of software specifications"},
    {"consistency_between_specifications", "consistency between specifications"},
    {"cost_effort_estimation_accuracy", "cost/effort estimation accuracy"},
    {"degree_of_automation", "degree of automation"},
    {"degree_of_continuous_improvement", "degree of continuous improvement"},
    {"degree_of_external_uncertainty_and_change", "degree of external uncertainty and change"},
    {"degree_of_in_house_reuse", "degree of in-house reuse"},
    {"developer_motivation", "developer motivation"},
    {"developer_skill_level", "developer skill level"},
    {"developer_well_being", "developer well-being"},
    {"effectiveness_of_internal_communication", "effectiveness of internal communication"},
    {"financial_risk", "financial risk"},
    {"geographic_distribution_of_work", "geographic distribution of work"},
    {"management_effectiveness", "management effectiveness"},
    {"measurability_of_software_system", "measurability of software system"},
    {"quality_assurance_effectiveness", "quality assurance effectiveness"},
    {"quality_of_software_requirements_documentation", "quality of software requirements documentation"},
    {"quality_of_software_structure", "quality of software structure"},
    {"quality_of_system_specifications", "quality of system specifications"},
    {"quality_of_user_involvement", "quality of user involvement"},
    {"software_complexity", "software complexity"},
    {"team_quality", "team quality"},
    {"use_of_cots", "use of COTS"},
    {"use_of_fault_tolerance_mechanisms", "use of fault-tolerance mechanisms"},
    {"use_of_formal_methods", "use of formal methods"},
    {"use_of_open_source_software", "use of open source software"},
}};

}  // namespace

std::span<const Construct> canonical_constructs() { return kCanonical; }

std::vector<std::string> canonical_ids() {
    std::vector<std::string> ids;
    ids.reserve(kCanonical.size());
    for (const auto& c : kCanonical) ids.push_back(c.id);
    return ids;
}

std::optional<std::size_t> canonical_index(std::string_view id) {
    auto it = std::find_if(kCanonical.begin(), kCanonical.end(),
                           [&](const Construct& c) { return c.id == id; });
    if (it == kCanonical.end()) return std::nullopt;
    return static_cast<std::size_t>(it - kCanonical.begin());
}

bool is_canonical_id(std::string_view id) { return canonical_index(id).has_value(); }

std::string make_custom_id(std::string_view label) {
    std::string out(kCustomPrefix);
    bool pending_sep = false;
    for (unsigned char ch : label) {
        if (std::isalnum(ch)) {
            if (pending_sep && out.size() > kCustomPrefix.size()) out.push_back('_');
            out.push_back(static_cast<char>(std::tolower(ch)));
            pending_sep = false;
        } else {
            pending_sep = true;
        }
    }
    return out;
}

std::string display_label(std::string_view id) {
    if (id == kSesId) return std::string(kSesLabel);
    if (auto idx = canonical_index(id)) return kCanonical[*idx].label;
    if (is_other_id(id)) return "other";
    std::string s(is_custom_id(id) ? id.substr(kCustomPrefix.size()) : id);
    std::replace(s.begin(), s.end(), '_', ' ');
    return s;
}

}  // namespace cogmap
