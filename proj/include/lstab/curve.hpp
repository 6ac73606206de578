#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lstab {

struct Component {
    std::string label;
    int genus = 0;

    bool operator==(const Component&) const = default;
};

// A node joins components a and b (indices); a == b is a self-node.
struct Node {
    std::size_t a = 0;
    std::size_t b = 0;

    bool is_self() const noexcept { return a == b; }
    bool touches(std::size_t i) const noexcept { return a == i || b == i; }
    std::size_t other(std::size_t i) const noexcept { return a == i ? b : a; }

    bool operator==(const Node&) const = default;
};

/// Decorated dual graph of a nodal curve. Components carry unique labels and
/// geometric genera; nodes are edges and are identified by their position in
/// the node list, so parallel edges and self-loops are representable.
///
/// Invariants (checked on construction): at least one component, labels
/// unique and nonempty, genera nonnegative, dual graph connected.
class NodalCurve {
public:
    NodalCurve(std::vector<Component> components, std::vector<Node> nodes);

    static NodalCurve from_labels(std::vector<Component> components,
                                  const std::vector<std::pair<std::string, std::string>>& nodes);

    std::size_t num_components() const noexcept { return components_.size(); }
    std::size_t num_nodes() const noexcept { return nodes_.size(); }
    const std::vector<Component>& components() const noexcept { return components_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const Component& component(std::size_t i) const { return components_.at(i); }
    const Node& node(std::size_t k) const { return nodes_.at(k); }

    std::optional<std::size_t> find(std::string_view label) const;
    // Throws Error(Validation) for unknown labels.
    std::size_t index_of(std::string_view label) const;

    bool has_self_nodes() const noexcept;
    // Number of nodes joining i and j (i != j); for i == j, the number of
    // self-nodes of i.
    int nodes_between(std::size_t i, std::size_t j) const noexcept;
    // Intersection number Y_i . Y_j of components inside a regular total
    // space whose special fiber is this curve.
    int intersection(std::size_t i, std::size_t j) const noexcept;

    bool operator==(const NodalCurve&) const = default;

private:
    std::vector<Component> components_;
    std::vector<Node> nodes_;
};

// Connected, nonempty set of components (sorted indices into the curve).
struct Subcurve {
    std::vector<std::size_t> components;

    bool contains(std::size_t i) const noexcept;
    bool operator==(const Subcurve&) const = default;
};

Subcurve make_subcurve(const NodalCurve& curve, std::vector<std::size_t> components);
Subcurve make_subcurve(const NodalCurve& curve, const std::vector<std::string>& labels);
std::vector<std::string> labels_of(const NodalCurve& curve, const Subcurve& sub);

// p_a = sum g_i + #nodes - #components + 1.
int arithmetic_genus(const NodalCurve& curve);

bool is_compact_type(const NodalCurve& curve);

struct NodeSplit {
    Subcurve first;  // side containing the node's first endpoint
    Subcurve second;
    std::size_t node = 0;
};

// Throws NotSeparating for self-nodes and nodes on cycles.
NodeSplit split_at_node(const NodalCurve& curve, std::size_t node);

std::vector<std::size_t> separating_nodes(const NodalCurve& curve);

// Replaces node k by a chain of `length` rational components. The first new
// edge reuses index k; the remaining ones are appended.
NodalCurve insert_rational_chain(const NodalCurve& curve, std::size_t node, int length);

struct InducedCurve {
    NodalCurve curve;
    std::vector<std::size_t> component_map; // new index -> old index
    std::vector<std::size_t> node_map;      // new index -> old index
};

// Components of `sub` and every node with both branches in `sub`.
InducedCurve induced_curve(const NodalCurve& curve, const Subcurve& sub);

} // namespace lstab
