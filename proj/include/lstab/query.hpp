#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lstab/subsheaf.hpp"

namespace lstab {

// One parsed query line, e.g. "check-w --pol w --strict".
struct Query {
    std::string command;
    std::string text; // normalized echo of the query line
    std::string bundle; // empty: first bundle of the document
    bool strict = false;
    std::string polarization;
    std::string line;
    std::optional<std::size_t> node;
    int max_steps = 64;
    std::string twist;
    std::vector<std::pair<std::size_t, int>> blowups; // node index, chain length
    std::vector<int> rank_vector;
    std::optional<Achievability> model;
    std::optional<Int> degree_floor;
    std::optional<std::size_t> budget;
};

// Known commands, in the order they are documented.
const std::vector<std::string>& query_commands();

// Throws Error(Usage) for unknown commands, flags or malformed values.
Query parse_query(std::string_view text);

} // namespace lstab
