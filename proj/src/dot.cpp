#include "cogmap/dot.hpp"

#include <fmt/format.h>

#include "cogmap/vocabulary.hpp"

namespace cogmap {

namespace {

constexpr std::string_view kPrelude =
    "  rankdir=LR;\n"
    "  node [shape=box, style=rounded, fontname=\"Helvetica\"];\n"
    "  edge [fontname=\"Helvetica\", fontsize=10];\n";

constexpr std::string_view kSesStyle = "shape=box, style=filled, fillcolor=yellow";

std::string node_line(std::string_view id, std::string_view label, std::string_view extra = {}) {
    std::string attrs = fmt::format("label={}", dot_quote(label));
    if (!extra.empty()) attrs += fmt::format(", {}", extra);
    return fmt::format("  {} [{}];\n", dot_quote(id), attrs);
}

}  // namespace

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string map_to_dot(const CausalMap& map) {
    std::string out = fmt::format("digraph {} {{\n", dot_quote(map.respondent_id));
    out += kPrelude;
    for (const auto& n : map.nodes) {
        const std::string label = n.label ? *n.label : display_label(n.id);
        switch (n.kind) {
            case NodeKind::ses: out += node_line(n.id, label, kSesStyle); break;
            case NodeKind::other:
                out += node_line(n.id, "other", "style=filled, fillcolor=lightgrey, fontsize=9");
                break;
            default: out += node_line(n.id, label); break;
        }
    }
    for (const auto& e : map.edges) {
        const std::string w = e.sign == Sign::unknown ? std::to_string(e.magnitude)
                                                      : fmt::format("{:+d}", e.signed_weight());
        out += fmt::format("  {} -> {} [label={}];\n", dot_quote(e.from), dot_quote(e.to), dot_quote(w));
    }
    out += "}\n";
    return out;
}

std::string consensus_to_dot(const ConsensusGraph& graph, std::string_view name) {
    std::string out = fmt::format("digraph {} {{\n", dot_quote(name));
    out += kPrelude;
    out += fmt::format("  label={};\n",
                       dot_quote(fmt::format("{} (percentile {:g}, threshold {:.4f})", name, graph.percentile,
                                             graph.threshold)));
    for (const auto& id : graph.nodes) {
        if (id == kSesId)
            out += node_line(id, display_label(id), kSesStyle);
        else
            out += node_line(id, display_label(id));
    }
    for (const auto& e : graph.edges) {
        const std::string w = e.mean_explicit_weight ? fmt::format("{:+.2f}", *e.mean_explicit_weight) : "n/a";
        out += fmt::format("  {} -> {} [label={}];\n", dot_quote(e.pair.first), dot_quote(e.pair.second),
                           dot_quote(fmt::format("{:.3f} / {}", e.score, w)));
    }
    out += "}\n";
    return out;
}

}  // namespace cogmap
