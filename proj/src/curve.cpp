#include "lstab/curve.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "lstab/error.hpp"

namespace lstab {

namespace {

// Components reachable from `start` using nodes accepted by `use_node`,
// restricted to `allowed`.
template <typename NodeFilter, typename ComponentFilter>
std::vector<bool> reachable(const NodalCurve& curve, std::size_t start,
                            NodeFilter use_node, ComponentFilter allowed) {
    std::vector<bool> seen(curve.num_components(), false);
    std::queue<std::size_t> todo;
    seen[start] = true;
    todo.push(start);
    while (!todo.empty()) {
        const auto i = todo.front();
        todo.pop();
        for (std::size_t k = 0; k < curve.num_nodes(); ++k) {
            const auto& n = curve.node(k);
            if (!n.touches(i) || !use_node(k))
                continue;
            const auto j = n.other(i);
            if (!seen[j] && allowed(j)) {
                seen[j] = true;
                todo.push(j);
            }
        }
    }
    return seen;
}

} // namespace

NodalCurve::NodalCurve(std::vector<Component> components, std::vector<Node> nodes)
    : components_(std::move(components)), nodes_(std::move(nodes)) {
    if (components_.empty())
        fail(ErrorKind::Validation, "curve has no components");
    std::set<std::string_view> labels;
    for (const auto& c : components_) {
        if (c.label.empty())
            fail(ErrorKind::Validation, "component label is empty");
        if (c.genus < 0)
            fail(ErrorKind::Validation, "component " + c.label + " has negative genus");
        if (!labels.insert(c.label).second)
            fail(ErrorKind::Validation, "duplicate component label " + c.label);
    }
    for (const auto& n : nodes_)
        if (n.a >= components_.size() || n.b >= components_.size())
            fail(ErrorKind::Validation, "node refers to a missing component");
    const auto seen = reachable(*this, 0, [](std::size_t) { return true; },
                                [](std::size_t) { return true; });
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            fail(ErrorKind::Validation, "dual graph is disconnected (component " +
                                            components_[i].label + " unreachable)");
}

NodalCurve NodalCurve::from_labels(std::vector<Component> components,
                                   const std::vector<std::pair<std::string, std::string>>& nodes) {
    auto index = [&](const std::string& label) {
        for (std::size_t i = 0; i < components.size(); ++i)
            if (components[i].label == label)
                return i;
        fail(ErrorKind::Validation, "node refers to unknown component " + label);
    };
    std::vector<Node> edges;
    edges.reserve(nodes.size());
    for (const auto& [a, b] : nodes)
        edges.push_back({index(a), index(b)});
    return NodalCurve(std::move(components), std::move(edges));
}

std::optional<std::size_t> NodalCurve::find(std::string_view label) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (components_[i].label == label)
            return i;
    return std::nullopt;
}

std::size_t NodalCurve::index_of(std::string_view label) const {
    if (auto i = find(label))
        return *i;
    fail(ErrorKind::Validation, "unknown component " + std::string(label));
}

bool NodalCurve::has_self_nodes() const noexcept {
    return std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_self(); });
}

int NodalCurve::nodes_between(std::size_t i, std::size_t j) const noexcept {
    int count = 0;
    for (const auto& n : nodes_)
        if ((n.a == i && n.b == j) || (n.a == j && n.b == i))
            ++count;
    return count;
}

int NodalCurve::intersection(std::size_t i, std::size_t j) const noexcept {
    if (i != j)
        return nodes_between(i, j);
    // Y_i . X_0 = 0, and self-nodes do not meet other components.
    int total = 0;
    for (std::size_t k = 0; k < components_.size(); ++k)
        if (k != i)
            total += nodes_between(i, k);
    return -total;
}

bool Subcurve::contains(std::size_t i) const noexcept {
    return std::binary_search(components.begin(), components.end(), i);
}

Subcurve make_subcurve(const NodalCurve& curve, std::vector<std::size_t> components) {
    std::sort(components.begin(), components.end());
    components.erase(std::unique(components.begin(), components.end()), components.end());
    if (components.empty())
        fail(ErrorKind::Validation, "subcurve is empty");
    if (components.back() >= curve.num_components())
        fail(ErrorKind::Validation, "subcurve refers to a missing component");
    Subcurve sub{std::move(components)};
    const auto seen = reachable(curve, sub.components.front(), [](std::size_t) { return true; },
                                [&](std::size_t j) { return sub.contains(j); });
    for (auto i : sub.components)
        if (!seen[i])
            fail(ErrorKind::Validation, "subcurve is not connected");
    return sub;
}

Subcurve make_subcurve(const NodalCurve& curve, const std::vector<std::string>& labels) {
    std::vector<std::size_t> indices;
    for (const auto& l : labels)
        indices.push_back(curve.index_of(l));
    return make_subcurve(curve, std::move(indices));
}

std::vector<std::string> labels_of(const NodalCurve& curve, const Subcurve& sub) {
    std::vector<std::string> out;
    for (auto i : sub.components)
        out.push_back(curve.component(i).label);
    return out;
}

int arithmetic_genus(const NodalCurve& curve) {
    int genus_sum = 0;
    for (const auto& c : curve.components())
        genus_sum += c.genus;
    return genus_sum + static_cast<int>(curve.num_nodes()) -
           static_cast<int>(curve.num_components()) + 1;
}

bool is_compact_type(const NodalCurve& curve) {
    // Connected, so #nodes = #components - 1 already forces a tree.
    return !curve.has_self_nodes() && curve.num_nodes() + 1 == curve.num_components();
}

NodeSplit split_at_node(const NodalCurve& curve, std::size_t node) {
    if (node >= curve.num_nodes())
        fail(ErrorKind::Precondition, "node index " + std::to_string(node) + " out of range");
    const auto& n = curve.node(node);
    if (n.is_self())
        fail(ErrorKind::NotSeparating, "node " + std::to_string(node) + " is a self-node");
    const auto seen = reachable(curve, n.a, [&](std::size_t k) { return k != node; },
                                [](std::size_t) { return true; });
    if (seen[n.b])
        fail(ErrorKind::NotSeparating, "node " + std::to_string(node) + " lies on a cycle");
    NodeSplit split;
    split.node = node;
    for (std::size_t i = 0; i < curve.num_components(); ++i)
        (seen[i] ? split.first : split.second).components.push_back(i);
    return split;
}

std::vector<std::size_t> separating_nodes(const NodalCurve& curve) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < curve.num_nodes(); ++k) {
        try {
            split_at_node(curve, k);
            out.push_back(k);
        } catch (const Error&) {
        }
    }
    return out;
}

NodalCurve insert_rational_chain(const NodalCurve& curve, std::size_t node, int length) {
    if (node >= curve.num_nodes())
        fail(ErrorKind::Precondition, "node index " + std::to_string(node) + " out of range");
    if (length < 1)
        fail(ErrorKind::Precondition, "chain length must be at least 1");
    auto components = curve.components();
    auto nodes = curve.nodes();
    const auto [a, b] = std::pair{nodes[node].a, nodes[node].b};

    std::vector<std::size_t> chain;
    for (int k = 1; k <= length; ++k) {
        std::string label = "E" + std::to_string(node) + "." + std::to_string(k);
        while (curve.find(label))
            label += "'";
        chain.push_back(components.size());
        components.push_back({label, 0});
    }
    nodes[node] = {a, chain.front()};
    for (std::size_t k = 1; k < chain.size(); ++k)
        nodes.push_back({chain[k - 1], chain[k]});
    nodes.push_back({chain.back(), b});
    return NodalCurve(std::move(components), std::move(nodes));
}

InducedCurve induced_curve(const NodalCurve& curve, const Subcurve& sub) {
    std::vector<std::size_t> new_index(curve.num_components(), curve.num_components());
    std::vector<Component> components;
    std::vector<std::size_t> component_map;
    for (auto i : sub.components) {
        new_index[i] = components.size();
        components.push_back(curve.component(i));
        component_map.push_back(i);
    }
    std::vector<Node> nodes;
    std::vector<std::size_t> node_map;
    for (std::size_t k = 0; k < curve.num_nodes(); ++k) {
        const auto& n = curve.node(k);
        if (sub.contains(n.a) && sub.contains(n.b)) {
            nodes.push_back({new_index[n.a], new_index[n.b]});
            node_map.push_back(k);
        }
    }
    return {NodalCurve(std::move(components), std::move(nodes)), std::move(component_map),
            std::move(node_map)};
}

} // namespace lstab
