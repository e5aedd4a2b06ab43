#include "cogmap/causal_map.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "cogmap/vocabulary.hpp"

namespace cogmap {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::construct: return "construct";
        case NodeKind::custom: return "custom";
        case NodeKind::ses: return "ses";
        case NodeKind::other: return "other";
    }
    return "construct";
}

std::optional<NodeKind> node_kind_from_string(std::string_view s) {
    if (s == "construct") return NodeKind::construct;
    if (s == "custom") return NodeKind::custom;
    if (s == "ses") return NodeKind::ses;
    if (s == "other") return NodeKind::other;
    return std::nullopt;
}

const Node* CausalMap::find_node(std::string_view id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

const Edge* CausalMap::find_edge(std::string_view from, std::string_view to) const {
    for (const auto& e : edges)
        if (e.from == from && e.to == to) return &e;
    return nullptr;
}

std::vector<std::string> CausalMap::construct_ids() const {
    std::vector<std::string> ids;
    for (const auto& n : nodes)
        if (n.kind == NodeKind::construct || n.kind == NodeKind::custom) ids.push_back(n.id);
    return ids;
}

bool ValidationReport::has_error(IssueCode code) const {
    return std::any_of(errors.begin(), errors.end(), [&](const Issue& i) { return i.code == code; });
}

bool ValidationReport::has_warning(IssueCode code) const {
    return std::any_of(warnings.begin(), warnings.end(),
                       [&](const Issue& i) { return i.code == code; });
}

std::string ValidationReport::describe() const {
    std::string out;
    for (const auto& e : errors) out += fmt::format("error: {}\n", e.message);
    for (const auto& w : warnings) out += fmt::format("warning: {}\n", w.message);
    return out;
}

std::vector<std::string> unreachable_nodes(const CausalMap& map) {
    // Reverse BFS from ses over incoming edges.
    std::unordered_map<std::string, std::vector<std::string>> preds;
    for (const auto& e : map.edges) preds[e.to].push_back(e.from);

    std::set<std::string> reached{std::string(kSesId)};
    std::vector<std::string> frontier{std::string(kSesId)};
    while (!frontier.empty()) {
        std::string cur = std::move(frontier.back());
        frontier.pop_back();
        auto it = preds.find(cur);
        if (it == preds.end()) continue;
        for (const auto& p : it->second)
            if (reached.insert(p).second) frontier.push_back(p);
    }

    std::vector<std::string> out;
    for (const auto& n : map.nodes) {
        if (n.kind == NodeKind::ses || n.kind == NodeKind::other) continue;
        if (!reached.count(n.id)) out.push_back(n.id);
    }
    return out;
}

ValidationReport validate(const CausalMap& map) {
    ValidationReport r;
    auto err = [&](IssueCode c, std::string msg) { r.errors.push_back({c, std::move(msg)}); };

    std::map<std::string, const Node*> by_id;
    int ses_count = 0;
    int construct_count = 0;
    for (const auto& n : map.nodes) {
        if (!by_id.emplace(n.id, &n).second) {
            err(IssueCode::duplicate_node, fmt::format("duplicate node '{}'", n.id));
            continue;
        }
        switch (n.kind) {
            case NodeKind::ses:
                ++ses_count;
                if (n.id != kSesId)
                    err(IssueCode::bad_node_id, fmt::format("ses node must have id 'ses', got '{}'", n.id));
                break;
            case NodeKind::construct:
                ++construct_count;
                if (!is_canonical_id(n.id))
                    err(IssueCode::bad_node_id, fmt::format("unknown canonical construct '{}'", n.id));
                break;
            case NodeKind::custom:
                ++construct_count;
                if (!is_custom_id(n.id) || n.id.size() == kCustomPrefix.size())
                    err(IssueCode::bad_node_id,
                        fmt::format("custom node '{}' must carry the '{}' prefix", n.id, kCustomPrefix));
                break;
            case NodeKind::other:
                if (!is_other_id(n.id))
                    err(IssueCode::bad_node_id,
                        fmt::format("other node '{}' must carry the '{}' prefix", n.id, kOtherPrefix));
                break;
        }
        if (n.kind != NodeKind::ses && n.id == kSesId)
            err(IssueCode::bad_node_id, "id 'ses' is reserved for the ses node");
        if (n.kind == NodeKind::other && !n.attached_to)
            err(IssueCode::bad_attachment, fmt::format("other node '{}' has no attached_to", n.id));
        if (n.kind != NodeKind::other && n.attached_to)
            err(IssueCode::bad_attachment,
                fmt::format("node '{}' is not an other node but has attached_to", n.id));
    }
    if (ses_count == 0) err(IssueCode::missing_ses, "map has no ses node");
    if (ses_count > 1) err(IssueCode::multiple_ses, "map has more than one ses node");
    if (construct_count == 0) err(IssueCode::no_constructs, "map has no constructs besides ses");

    for (const auto& n : map.nodes) {
        if (n.kind != NodeKind::other || !n.attached_to) continue;
        auto it = by_id.find(*n.attached_to);
        if (it == by_id.end() || it->second->kind == NodeKind::other)
            err(IssueCode::bad_attachment,
                fmt::format("other node '{}' is attached to '{}', which is not a construct", n.id,
                            *n.attached_to));
    }

    std::set<std::pair<std::string, std::string>> seen;
    std::map<std::string, int> other_out, other_in;
    std::map<std::string, bool> has_other_antecedent;
    for (const auto& e : map.edges) {
        const auto from = by_id.find(e.from);
        const auto to = by_id.find(e.to);
        if (from == by_id.end() || to == by_id.end()) {
            err(IssueCode::unknown_endpoint,
                fmt::format("edge {} -> {} references an unknown node", e.from, e.to));
            continue;
        }
        if (e.from == e.to) err(IssueCode::self_loop, fmt::format("self-loop on '{}'", e.from));
        if (!seen.emplace(e.from, e.to).second)
            err(IssueCode::duplicate_edge, fmt::format("duplicate edge {} -> {}", e.from, e.to));
        if (e.magnitude < 1 || e.magnitude > 3)
            err(IssueCode::bad_magnitude,
                fmt::format("edge {} -> {} has magnitude {} outside {{1,2,3}}", e.from, e.to, e.magnitude));

        const bool from_other = from->second->kind == NodeKind::other;
        if (from_other && e.sign != Sign::unknown)
            err(IssueCode::bad_sign, fmt::format("edge from other node '{}' must not carry a sign", e.from));
        if (!from_other && e.sign == Sign::unknown)
            err(IssueCode::bad_sign, fmt::format("edge {} -> {} has no sign", e.from, e.to));

        if (from_other) {
            ++other_out[e.from];
            has_other_antecedent[e.to] = true;
            const auto& att = from->second->attached_to;
            if (att && *att != e.to)
                err(IssueCode::bad_other_edges,
                    fmt::format("other node '{}' points at '{}' but is attached to '{}'", e.from, e.to, *att));
        }
        if (to->second->kind == NodeKind::other) ++other_in[e.to];
    }
    for (const auto& n : map.nodes) {
        if (n.kind != NodeKind::other) continue;
        if (other_out[n.id] != 1)
            err(IssueCode::bad_other_edges,
                fmt::format("other node '{}' must have exactly one outgoing edge", n.id));
        if (other_in[n.id] != 0)
            err(IssueCode::bad_other_edges, fmt::format("other node '{}' has incoming edges", n.id));
    }

    if (ses_count == 1) {
        for (const auto& id : unreachable_nodes(map))
            err(IssueCode::unreachable, fmt::format("node '{}' has no path to ses", id));
    }

    std::set<std::string> has_incoming;
    for (const auto& e : map.edges) {
        auto from = by_id.find(e.from);
        if (from != by_id.end() && from->second->kind != NodeKind::other) has_incoming.insert(e.to);
    }
    for (const auto& id : has_incoming) {
        if (!has_other_antecedent[id])
            r.warnings.push_back({IssueCode::missing_other_antecedent,
                                  fmt::format("'{}' has antecedents but no other card", id)});
    }
    return r;
}

SignedMatrix adjacency(const CausalMap& map, std::span<const std::string> order, bool include_other) {
    SignedMatrix m;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& id : order) {
        if (index.count(id)) throw std::invalid_argument(fmt::format("duplicate id '{}' in order", id));
        const Node* node = map.find_node(id);
        const bool other = is_other_id(id) || (node && node->kind == NodeKind::other);
        if (other && !include_other) {
            index.emplace(id, static_cast<std::size_t>(-1));
            continue;
        }
        index.emplace(id, m.order.size());
        m.order.push_back(id);
    }
    const std::size_t n = m.order.size();
    m.entries.assign(n * n, 0);
    for (const auto& e : map.edges) {
        auto fi = index.find(e.from);
        auto ti = index.find(e.to);
        if (fi == index.end() || ti == index.end()) continue;
        if (fi->second >= n || ti->second >= n || fi->second == ti->second) continue;
        m.entries[fi->second * n + ti->second] = e.signed_weight();
    }
    return m;
}

}  // namespace cogmap
