#include "lstab/query.hpp"

#include <sstream>

#include <CLI11.hpp>

#include "lstab/error.hpp"

namespace lstab {

const std::vector<std::string>& query_commands() {
    static const std::vector<std::string> commands = {
        "chi",  "check-ell",    "check-w", "find-polarization", "glue",
        "compact-type", "twist", "langton", "oracle"};
    return commands;
}

namespace {

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::istringstream in{std::string(text)};
    for (std::string w; in >> w;)
        words.push_back(w);
    return words;
}

std::vector<int> parse_rank_vector(const std::string& text) {
    std::string body = text;
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);
    std::vector<int> out;
    std::istringstream in(body);
    for (std::string item; std::getline(in, item, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorKind::Usage, "malformed rank vector '" + text + "'");
        }
    }
    if (out.empty())
        fail(ErrorKind::Usage, "empty rank vector");
    return out;
}

std::pair<std::size_t, int> parse_blowup(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos)
            throw std::invalid_argument(text);
        const long node = std::stol(text.substr(0, colon));
        const int length = std::stoi(text.substr(colon + 1));
        if (node < 0 || length < 0)
            throw std::invalid_argument(text);
        return {static_cast<std::size_t>(node), length};
    } catch (const std::exception&) {
        fail(ErrorKind::Usage, "--blowup expects NODE:LENGTH, got '" + text + "'");
    }
}

} // namespace

Query parse_query(std::string_view text) {
    auto words = split_words(text);
    if (words.empty())
        fail(ErrorKind::Usage, "empty query");

    Query q;
    q.command = words.front();
    for (const auto& w : words)
        q.text += (q.text.empty() ? "" : " ") + w;

    const auto& known = query_commands();
    if (std::find(known.begin(), known.end(), q.command) == known.end())
        fail(ErrorKind::Usage, "unknown query '" + q.command + "'");

    CLI::App app{q.command, q.command};
    app.set_help_flag();
    app.allow_windows_style_options(false);
    app.add_option("--bundle", q.bundle);

    const auto& c = q.command;
    if (c != "chi" && c != "oracle" && c != "langton")
        app.add_flag("--strict", q.strict);
    std::size_t node = 0;
    std::vector<std::string> blowups;
    std::string ranks, model;
    if (c == "check-w" || c == "langton")
        app.add_option("--pol", q.polarization)->required();
    CLI::Option* node_opt = nullptr;
    if (c == "glue")
        node_opt = app.add_option("--node", node);
    if (c == "twist")
        app.add_option("--line", q.line)->required();
    if (c == "langton") {
        app.add_option("--max-steps", q.max_steps)->check(CLI::NonNegativeNumber);
        app.add_option("--twist", q.twist);
        app.add_option("--blowup", blowups)->take_all();
    }
    CLI::Option* floor_opt = nullptr;
    CLI::Option* budget_opt = nullptr;
    Int floor = 0;
    std::size_t budget = 0;
    if (c == "oracle") {
        app.add_option("--rank-vector", ranks)->required();
        app.add_option("--model", model)->check(CLI::IsMember({"generic", "aligned"}));
        floor_opt = app.add_option("--floor", floor);
        budget_opt = app.add_option("--budget", budget)->check(CLI::PositiveNumber);
    }

    std::vector<std::string> args(words.rbegin(), words.rend() - 1);
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        fail(ErrorKind::Usage, q.command + ": " + e.what());
    }

    if (node_opt && node_opt->count())
        q.node = node;
    for (const auto& b : blowups)
        q.blowups.push_back(parse_blowup(b));
    if (c == "oracle") {
        q.rank_vector = parse_rank_vector(ranks);
        if (!model.empty())
            q.model = model == "generic" ? Achievability::Generic : Achievability::Aligned;
        if (floor_opt->count())
            q.degree_floor = floor;
        if (budget_opt->count())
            q.budget = budget;
    }
    return q;
}

} // namespace lstab
