#pragma once
// Causal map data model: one respondent's weighted digraph over constructs,
// rooted at the SES node.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogmap {

enum class NodeKind { construct, custom, ses, other };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view s);

struct Node {
    std::string id;
    NodeKind kind = NodeKind::construct;
    std::optional<std::string> attached_to;  // set iff kind == other
    std::optional<std::string> label;

    bool operator==(const Node&) const = default;
};

// Unknown is reserved for edges leaving an `other` node, whose direction of
// effect was never recorded.
enum class Sign : std::int8_t { negative = -1, unknown = 0, positive = 1 };

struct Edge {
    std::string from;
    std::string to;
    int magnitude = 1;
    Sign sign = Sign::positive;

    // sign * magnitude; an unknown sign counts as positive.
    int signed_weight() const {
        return sign == Sign::negative ? -magnitude : magnitude;
    }

    bool operator==(const Edge&) const = default;
};

struct CausalMap {
    std::string respondent_id;
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    const Node* find_node(std::string_view id) const;
    bool has_node(std::string_view id) const { return find_node(id) != nullptr; }
    const Edge* find_edge(std::string_view from, std::string_view to) const;

    // Ids of construct and custom nodes (no ses, no other), in node order.
    std::vector<std::string> construct_ids() const;

    bool operator==(const CausalMap&) const = default;
};

enum class IssueCode {
    missing_ses,
    multiple_ses,
    no_constructs,
    duplicate_node,
    bad_node_id,
    bad_attachment,
    bad_other_edges,
    unknown_endpoint,
    self_loop,
    duplicate_edge,
    bad_magnitude,
    bad_sign,
    unreachable,
    // warnings
    missing_other_antecedent,
};

struct Issue {
    IssueCode code;
    std::string message;
};

struct ValidationReport {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;

    bool ok() const { return errors.empty(); }
    bool has_error(IssueCode code) const;
    bool has_warning(IssueCode code) const;
    std::string describe() const;
};

ValidationReport validate(const CausalMap& map);

// Nodes (by id) that cannot reach ses along directed edges. Other nodes and
// ses itself are never reported.
std::vector<std::string> unreachable_nodes(const CausalMap& map);

struct SignedMatrix {
    std::vector<std::string> order;
    std::vector<int> entries;  // row-major, order.size() squared

    std::size_t size() const { return order.size(); }
    int at(std::size_t i, std::size_t j) const { return entries[i * order.size() + j]; }

    bool operator==(const SignedMatrix&) const = default;
};

// Projects a map onto a node order. Ids absent from the map give zero rows
// and columns. With include_other false, `other` ids are dropped from the
// order; with it true, other edges enter at their (unsigned) magnitude.
// Throws std::invalid_argument on duplicate ids in `order`.
SignedMatrix adjacency(const CausalMap& map, std::span<const std::string> order,
                       bool include_other = false);

}  // namespace cogmap
