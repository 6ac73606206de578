#include "lstab/document.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "lstab/error.hpp"
#include "lstab/query.hpp"

namespace lstab {

namespace {

template <class T>
const T& find_named(const std::vector<T>& items, std::string_view name, std::string_view what) {
    for (const auto& item : items)
        if (item.name == name)
            return item;
    fail(ErrorKind::Validation, "unknown " + std::string(what) + " '" + std::string(name) + "'");
}

} // namespace

const NamedBundle& Document::bundle(std::string_view name) const {
    if (name.empty()) {
        if (bundles.empty())
            fail(ErrorKind::Validation, "document has no bundle");
        return bundles.front();
    }
    return find_named(bundles, name, "bundle");
}

const NamedLine& Document::line(std::string_view name) const {
    return find_named(lines, name, "line bundle");
}

const NamedPolarization& Document::polarization(std::string_view name) const {
    return find_named(polarizations, name, "polarization");
}

namespace {

struct Token {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
    bool query = false; // whole remainder of a `query` line
};

std::size_t column_of(std::string_view line, std::size_t byte) {
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte; ++i)
        if ((static_cast<unsigned char>(line[i]) & 0xC0) != 0x80)
            ++col;
    return col;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

[[noreturn]] void fail_at(ErrorKind kind, std::size_t line, std::size_t column,
                          const std::string& message) {
    fail(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                   message);
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        bool first = true;
        std::size_t i = 0;
        while (i < line.size()) {
            if (is_space(line[i])) {
                ++i;
                continue;
            }
            std::size_t j = i;
            if (line[i] == '{' || line[i] == '}' || line[i] == '=') {
                j = i + 1;
            } else {
                while (j < line.size() && !is_space(line[j]) && line[j] != '{' &&
                       line[j] != '}' && line[j] != '=')
                    ++j;
            }
            Token tok{std::string(line.substr(i, j - i)), line_no, column_of(line, i)};
            if (first && tok.text == "query") {
                std::size_t k = j;
                while (k < line.size() && is_space(line[k]))
                    ++k;
                auto rest = line.substr(k);
                while (!rest.empty() && is_space(rest.back()))
                    rest.remove_suffix(1);
                tokens.push_back(tok);
                tokens.push_back({std::string(rest), line_no, column_of(line, k), true});
                break;
            }
            first = false;
            tokens.push_back(std::move(tok));
            i = j;
        }
        if (end == text.size())
            break;
        start = end + 1;
    }
    return tokens;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Document run();

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::optional<NodalCurve> curve_;

    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }

    const Token& next(std::string_view expected) {
        if (done()) {
            const auto& last = tokens_.back();
            fail_at(ErrorKind::Parse, last.line, last.column + last.text.size(),
                    "unexpected end of input, expected " + std::string(expected));
        }
        return tokens_[pos_++];
    }

    void expect(std::string_view text) {
        const auto& tok = next("'" + std::string(text) + "'");
        if (tok.text != text)
            fail_at(ErrorKind::Parse, tok.line, tok.column,
                    "expected '" + std::string(text) + "', found '" + tok.text + "'");
    }

    void skip_equals() {
        if (!done() && peek().text == "=")
            ++pos_;
    }

    const Token& word(std::string_view what) {
        const auto& tok = next(what);
        if (tok.text == "{" || tok.text == "}" || tok.text == "=" || tok.query)
            fail_at(ErrorKind::Parse, tok.line, tok.column,
                    "expected " + std::string(what) + ", found '" + tok.text + "'");
        return tok;
    }

    static Int integer(const Token& tok) {
        Int value = 0;
        const char* b = tok.text.data();
        const char* e = b + tok.text.size();
        if (b != e && *b == '+')
            ++b;
        auto [p, ec] = std::from_chars(b, e, value);
        if (ec == std::errc::result_out_of_range)
            fail_at(ErrorKind::Parse, tok.line, tok.column, "integer out of range: " + tok.text);
        if (ec != std::errc() || p != e || b == e)
            fail_at(ErrorKind::Parse, tok.line, tok.column, "expected an integer, found '" + tok.text + "'");
        return value;
    }

    int small_integer(const Token& tok) {
        const Int v = integer(tok);
        if (v < -1'000'000 || v > 1'000'000)
            fail_at(ErrorKind::Parse, tok.line, tok.column, "value out of range: " + tok.text);
        return static_cast<int>(v);
    }

    // Comma-separated integers; tolerates spaces around the commas.
    std::vector<Int> integer_list(const Token& first) {
        std::string joined = first.text;
        while (!done() && (joined.back() == ',' || peek().text.front() == ',') && !peek().query &&
               peek().text != "}")
            joined += tokens_[pos_++].text;
        std::vector<Int> out;
        std::size_t start = 0;
        while (true) {
            auto comma = joined.find(',', start);
            Token item{joined.substr(start, comma - start), first.line, first.column};
            out.push_back(integer(item));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        return out;
    }

    std::size_t component(const Token& tok) {
        auto idx = curve_->find(tok.text);
        if (!idx)
            fail_at(ErrorKind::Validation, tok.line, tok.column, "unknown component '" + tok.text + "'");
        return *idx;
    }

    void require_curve(const Token& at) {
        if (!curve_)
            fail_at(ErrorKind::Parse, at.line, at.column,
                    "'" + at.text + "' section before the curve section");
    }

    void check_unique(const std::vector<std::string>& names, const Token& tok,
                      std::string_view what) {
        if (std::find(names.begin(), names.end(), tok.text) != names.end())
            fail_at(ErrorKind::Validation, tok.line, tok.column,
                    "duplicate " + std::string(what) + " '" + tok.text + "'");
    }

    NodalCurve parse_curve(const Token& head);
    NamedBundle parse_bundle(const Token& name);
    NamedLine parse_line(const Token& name);
    NamedPolarization parse_polarization(const Token& name);
};

NodalCurve Parser::parse_curve(const Token& head) {
    expect("{");
    std::vector<Component> components;
    std::vector<std::pair<std::string, std::string>> nodes;
    std::vector<Token> node_tokens;
    std::map<std::string, Token> seen;
    while (true) {
        const auto& tok = next("'}'");
        if (tok.text == "}")
            break;
        if (tok.text == "component") {
            const auto& label = word("component label");
            if (seen.count(label.text))
                fail_at(ErrorKind::Validation, label.line, label.column,
                        "duplicate component '" + label.text + "'");
            seen.emplace(label.text, label);
            int genus = 0;
            if (!done() && peek().text == "genus") {
                ++pos_;
                skip_equals();
                const auto& g = word("genus");
                genus = small_integer(g);
                if (genus < 0)
                    fail_at(ErrorKind::Validation, g.line, g.column, "negative genus");
            }
            components.push_back({label.text, genus});
        } else if (tok.text == "node") {
            const auto& a = word("component label");
            const auto& b = word("component label");
            for (const auto* t : {&a, &b})
                if (!seen.count(t->text))
                    fail_at(ErrorKind::Validation, t->line, t->column,
                            "unknown component '" + t->text + "'");
            nodes.emplace_back(a.text, b.text);
            node_tokens.push_back(tok);
        } else {
            fail_at(ErrorKind::Parse, tok.line, tok.column,
                    "expected 'component', 'node' or '}', found '" + tok.text + "'");
        }
    }
    try {
        return NodalCurve::from_labels(std::move(components), nodes);
    } catch (const Error& e) {
        fail_at(ErrorKind::Validation, head.line, head.column, e.detail());
    }
}

NamedBundle Parser::parse_bundle(const Token& name) {
    expect("{");
    const auto n = curve_->num_components();
    std::optional<int> rank;
    std::vector<std::optional<Int>> degrees(n);
    std::vector<std::optional<Splitting>> splittings(n);
    std::vector<std::optional<std::vector<Int>>> declared(n);
    std::vector<std::optional<Token>> splitting_at(n);
    Gluing gluing = Gluing::Unspecified;
    bool gluing_set = false;

    while (true) {
        const auto& tok = next("'}'");
        if (tok.text == "}")
            break;
        auto once = [&](bool already) {
            if (already)
                fail_at(ErrorKind::Validation, tok.line, tok.column,
                        "'" + tok.text + "' given twice");
        };
        if (tok.text == "rank") {
            once(rank.has_value());
            skip_equals();
            const auto& v = word("rank");
            rank = small_integer(v);
            if (*rank < 1)
                fail_at(ErrorKind::Validation, v.line, v.column, "rank must be positive");
        } else if (tok.text == "degree" || tok.text == "splitting" || tok.text == "declare") {
            const auto& label = word("component label");
            const auto i = component(label);
            skip_equals();
            const auto& v = word("value");
            if (tok.text == "degree") {
                if (degrees[i])
                    fail_at(ErrorKind::Validation, tok.line, tok.column,
                            "degree on " + label.text + " given twice");
                degrees[i] = integer(v);
            } else if (tok.text == "splitting") {
                if (splittings[i])
                    fail_at(ErrorKind::Validation, tok.line, tok.column,
                            "splitting on " + label.text + " given twice");
                splittings[i] = integer_list(v);
                splitting_at[i] = tok;
            } else {
                if (declared[i])
                    fail_at(ErrorKind::Validation, tok.line, tok.column,
                            "declared maxima on " + label.text + " given twice");
                declared[i] = integer_list(v);
            }
        } else if (tok.text == "gluing") {
            once(gluing_set);
            skip_equals();
            const auto& v = word("gluing");
            try {
                gluing = parse_gluing(v.text);
            } catch (const Error& e) {
                fail_at(ErrorKind::Parse, v.line, v.column, e.detail());
            }
            gluing_set = true;
        } else {
            fail_at(ErrorKind::Parse, tok.line, tok.column,
                    "expected 'rank', 'degree', 'splitting', 'declare', 'gluing' or '}', found '" +
                        tok.text + "'");
        }
    }
    if (!rank)
        fail_at(ErrorKind::Validation, name.line, name.column, "bundle '" + name.text + "' has no rank");
    std::vector<Int> degs(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!degrees[i])
            fail_at(ErrorKind::Validation, name.line, name.column,
                    "bundle '" + name.text + "' has no degree on " + curve_->component(i).label);
        degs[i] = *degrees[i];
        if (splittings[i]) {
            const auto& at = *splitting_at[i];
            if (splittings[i]->size() != static_cast<std::size_t>(*rank))
                fail_at(ErrorKind::Validation, at.line, at.column,
                        "splitting on " + curve_->component(i).label + " has " +
                            std::to_string(splittings[i]->size()) + " entries, rank is " +
                            std::to_string(*rank));
            Int sum = 0;
            for (auto a : *splittings[i])
                sum = checked_add(sum, a);
            if (sum != degs[i])
                fail_at(ErrorKind::Validation, at.line, at.column,
                        "splitting sum " + std::to_string(sum) + " ≠ degree " +
                            std::to_string(degs[i]) + " on " + curve_->component(i).label);
        }
    }
    try {
        return {name.text, make_bundle(*curve_, *rank, std::move(degs), std::move(splittings),
                                       gluing, std::move(declared))};
    } catch (const Error& e) {
        fail_at(e.kind() == ErrorKind::Overflow ? ErrorKind::Overflow : ErrorKind::Validation,
                name.line, name.column, e.detail());
    }
}

NamedLine Parser::parse_line(const Token& name) {
    expect("{");
    LineBundleData line;
    line.degrees.assign(curve_->num_components(), 0);
    std::vector<bool> set(curve_->num_components(), false);
    while (true) {
        const auto& tok = next("'}'");
        if (tok.text == "}")
            break;
        if (tok.text != "degree")
            fail_at(ErrorKind::Parse, tok.line, tok.column,
                    "expected 'degree' or '}', found '" + tok.text + "'");
        const auto& label = word("component label");
        const auto i = component(label);
        if (set[i])
            fail_at(ErrorKind::Validation, tok.line, tok.column,
                    "degree on " + label.text + " given twice");
        skip_equals();
        line.degrees[i] = integer(word("degree"));
        set[i] = true;
    }
    return {name.text, std::move(line)};
}

NamedPolarization Parser::parse_polarization(const Token& name) {
    expect("{");
    const auto n = curve_->num_components();
    std::vector<std::optional<Rational>> weights(n);
    while (true) {
        const auto& tok = next("'}'");
        if (tok.text == "}")
            break;
        const auto i = component(tok);
        if (weights[i])
            fail_at(ErrorKind::Validation, tok.line, tok.column,
                    "weight on " + tok.text + " given twice");
        skip_equals();
        const auto& v = word("weight");
        try {
            weights[i] = parse_rational(v.text);
        } catch (const Error& e) {
            fail_at(ErrorKind::Parse, v.line, v.column, e.detail());
        }
    }
    std::vector<Rational> w;
    for (std::size_t i = 0; i < n; ++i) {
        if (!weights[i])
            fail_at(ErrorKind::Validation, name.line, name.column,
                    "polarization '" + name.text + "' has no weight on " +
                        curve_->component(i).label);
        w.push_back(*weights[i]);
    }
    try {
        return {name.text, Polarization(std::move(w))};
    } catch (const Error& e) {
        fail_at(ErrorKind::Validation, name.line, name.column, e.what());
    }
}

Document Parser::run() {
    std::vector<NamedBundle> bundles;
    std::vector<NamedLine> lines;
    std::vector<NamedPolarization> polarizations;
    std::vector<std::pair<Token, Query>> queries;
    std::vector<std::string> bundle_names, line_names, pol_names;

    while (!done()) {
        const auto& head = next("section");
        if (head.text == "curve") {
            if (curve_)
                fail_at(ErrorKind::Parse, head.line, head.column, "second curve section");
            curve_ = parse_curve(head);
        } else if (head.text == "bundle" || head.text == "line" || head.text == "polarization") {
            require_curve(head);
            const auto& name = word(head.text + " name");
            if (head.text == "bundle") {
                check_unique(bundle_names, name, "bundle");
                bundle_names.push_back(name.text);
                bundles.push_back(parse_bundle(name));
            } else if (head.text == "line") {
                check_unique(line_names, name, "line bundle");
                line_names.push_back(name.text);
                lines.push_back(parse_line(name));
            } else {
                check_unique(pol_names, name, "polarization");
                pol_names.push_back(name.text);
                polarizations.push_back(parse_polarization(name));
            }
        } else if (head.text == "query") {
            const auto& body = next("query");
            try {
                queries.emplace_back(body, parse_query(body.text));
            } catch (const Error& e) {
                fail_at(ErrorKind::Parse, body.line, body.column, e.detail());
            }
        } else {
            fail_at(ErrorKind::Parse, head.line, head.column,
                    "expected 'curve', 'bundle', 'line', 'polarization' or 'query', found '" +
                        head.text + "'");
        }
    }
    if (!curve_)
        fail_at(ErrorKind::Parse, 1, 1, "missing curve section");

    Document doc{*curve_, std::move(bundles), std::move(lines), std::move(polarizations), {}};
    // Names referenced by queries must exist.
    for (const auto& [tok, q] : queries) {
        auto check = [&](const std::string& name, auto lookup) {
            if (name.empty())
                return;
            try {
                lookup(name);
            } catch (const Error& e) {
                fail_at(ErrorKind::Validation, tok.line, tok.column, e.detail());
            }
        };
        check(q.bundle, [&](const std::string& s) { doc.bundle(s); });
        check(q.polarization, [&](const std::string& s) { doc.polarization(s); });
        check(q.line, [&](const std::string& s) { doc.line(s); });
        check(q.twist, [&](const std::string& s) { doc.line(s); });
        doc.queries.push_back(q.text);
    }
    return doc;
}

std::string join(const std::vector<Int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

} // namespace

Document parse_document(std::string_view text) {
    return Parser(tokenize(text)).run();
}

std::string serialize_document(const Document& doc) {
    std::ostringstream out;
    const auto& curve = doc.curve;
    out << "curve {\n";
    for (const auto& c : curve.components())
        out << "  component " << c.label << " genus " << c.genus << "\n";
    for (const auto& node : curve.nodes())
        out << "  node " << curve.component(node.a).label << " " << curve.component(node.b).label
            << "\n";
    out << "}\n";
    for (const auto& [name, b] : doc.bundles) {
        out << "\nbundle " << name << " {\n  rank " << b.rank << "\n";
        for (std::size_t i = 0; i < curve.num_components(); ++i)
            out << "  degree " << curve.component(i).label << " " << b.degrees[i] << "\n";
        for (std::size_t i = 0; i < curve.num_components(); ++i)
            if (b.splittings[i])
                out << "  splitting " << curve.component(i).label << " " << join(*b.splittings[i])
                    << "\n";
        for (std::size_t i = 0; i < curve.num_components(); ++i)
            if (b.declared_max_chi[i])
                out << "  declare " << curve.component(i).label << " "
                    << join(*b.declared_max_chi[i]) << "\n";
        out << "  gluing " << to_string(b.gluing) << "\n}\n";
    }
    for (const auto& [name, line] : doc.lines) {
        out << "\nline " << name << " {\n";
        for (std::size_t i = 0; i < curve.num_components(); ++i)
            out << "  degree " << curve.component(i).label << " " << line.degrees[i] << "\n";
        out << "}\n";
    }
    for (const auto& [name, w] : doc.polarizations) {
        out << "\npolarization " << name << " {\n";
        for (std::size_t i = 0; i < curve.num_components(); ++i)
            out << "  " << curve.component(i).label << " " << format_rational(w[i]) << "\n";
        out << "}\n";
    }
    if (!doc.queries.empty())
        out << "\n";
    for (const auto& q : doc.queries)
        out << "query " << q << "\n";
    return out.str();
}

} // namespace lstab
