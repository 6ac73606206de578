#include "lstab/report.hpp"

#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "lstab/degeneration.hpp"
#include "lstab/error.hpp"
#include "lstab/feasibility.hpp"
#include "lstab/stability.hpp"

namespace lstab {

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Usage:
        return exit_code::usage;
    case ErrorKind::Parse:
    case ErrorKind::Validation:
        return exit_code::data;
    case ErrorKind::Overflow:
        return exit_code::internal;
    default:
        return exit_code::precondition;
    }
}

const std::string& Report::at(std::string_view key) const {
    for (const auto& [k, v] : fields)
        if (k == key)
            return v;
    throw std::out_of_range("no report field '" + std::string(key) + "'");
}

bool Report::has(std::string_view key) const {
    for (const auto& [k, v] : fields)
        if (k == key)
            return true;
    return false;
}

std::string document_digest(const Document& document) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_document(document)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

template <class T>
std::string tuple_of(const std::vector<T>& values) {
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + std::to_string(values[i]);
    return out + ")";
}

class Builder {
public:
    explicit Builder(Report& r) : report_(r) {}

    void add(std::string key, std::string value) {
        report_.fields.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, Int value) { add(std::move(key), std::to_string(value)); }

    void notes(const std::vector<std::string>& notes, const std::string& prefix = "note") {
        for (std::size_t i = 0; i < notes.size(); ++i)
            add(prefix + "." + std::to_string(i + 1), notes[i]);
    }

    void exit(int code) { report_.exit_code = code; }

private:
    Report& report_;
};

int exit_for(Status status) {
    switch (status) {
    case Status::CertifiedYes:
        return exit_code::yes;
    case Status::CertifiedNo:
        return exit_code::no;
    case Status::Indeterminate:
        break;
    }
    return exit_code::indeterminate;
}

std::string per_component(const NodalCurve& curve, const std::vector<Int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? " " : "") + curve.component(i).label + ":" + std::to_string(values[i]);
    return out;
}

std::string splittings_of(const BundleData& b) {
    std::string out;
    for (std::size_t i = 0; i < b.splittings.size(); ++i) {
        if (!b.splittings[i])
            continue;
        out += (out.empty() ? "" : " ") + b.curve.component(i).label + ":" +
               tuple_of(*b.splittings[i]);
    }
    return out.empty() ? "none" : out;
}

void certificate_fields(Builder& out, const Certificate& c, const std::string& prefix) {
    out.add(prefix + ".ranks", tuple_of(c.type.ranks));
    out.add(prefix + ".degrees", tuple_of(c.type.degrees));
    out.add(prefix + ".overlaps", tuple_of(c.type.overlaps));
    out.add(prefix + ".chi", c.declared_chi);
    out.add(prefix + ".inequality", format_rational(c.lhs) + " " + c.relation + " " +
                                        format_rational(c.rhs));
    out.add(prefix + ".provenance", c.provenance);
    out.add(prefix + ".explanation", c.explanation);
}

void verdict_fields(Builder& out, const Verdict& v, const Notion& notion,
                    const std::string& prefix = "") {
    out.add(prefix + "result", std::string(to_string(v.status)) + " (" + notion.name() + ")");
    if (v.witness)
        certificate_fields(out, *v.witness, prefix + "witness");
    out.notes(v.notes, prefix + "note");
}

void run_chi(Builder& out, const BundleData& b) {
    out.add("result", euler_characteristic(b));
    std::vector<Int> chis;
    for (std::size_t i = 0; i < b.curve.num_components(); ++i)
        chis.push_back(component_chi(b, i));
    out.add("rank", b.rank);
    out.add("degree", total_degree(b));
    out.add("arithmetic_genus", arithmetic_genus(b.curve));
    out.add("component_chi", per_component(b.curve, chis));
}

void run_find_polarization(Builder& out, const BundleData& b, bool strict) {
    const auto res = exists_polarization(b, strict);
    out.add("result", std::string(to_string(res.outcome)) + " (" +
                          (strict ? "w-stable" : "w-semistable") + ")");
    out.exit(res.outcome == PolarizationOutcome::Feasible     ? exit_code::yes
             : res.outcome == PolarizationOutcome::Infeasible ? exit_code::no
                                                              : exit_code::indeterminate);
    if (res.witness)
        out.add("witness.polarization", res.witness->to_string());
    if (res.certificate) {
        const auto& cert = *res.certificate;
        const auto& system = res.guaranteed;
        out.add("certificate.summary", cert.summary);
        for (std::size_t i = 0; i < cert.multipliers.size(); ++i) {
            const auto& [k, weight] = cert.multipliers[i];
            out.add("certificate.row." + std::to_string(i + 1),
                    std::to_string(weight) + " x " + system.constraints[k].to_string());
        }
        out.add("certificate.combination", tuple_of(cert.combination));
        out.add("certificate.uses_strict", cert.uses_strict ? "yes" : "no");
    }
    out.add("constraints.guaranteed", static_cast<Int>(res.guaranteed.constraints.size()));
    out.add("constraints.potential", static_cast<Int>(res.potential.constraints.size()));
    out.notes(res.notes);
}

void run_glue(Builder& out, const BundleData& b, const Query& q) {
    std::size_t node = 0;
    if (q.node) {
        node = *q.node;
        if (node >= b.curve.num_nodes())
            fail(ErrorKind::Precondition, "node " + std::to_string(node) + " does not exist");
    } else {
        const auto sep = separating_nodes(b.curve);
        if (sep.empty())
            fail(ErrorKind::NotSeparating, "curve has no separating node");
        node = sep.front();
    }
    const auto split = split_at_node(b.curve, node);
    const auto left = block_status(b, split.first);
    const auto right = block_status(b, split.second);
    auto block = [&](const std::string& key, const BlockStatus& s) {
        std::string labels;
        for (const auto& l : s.labels)
            labels += (labels.empty() ? "" : ",") + l;
        out.add(key, "{" + labels + "} " + std::string(to_string(s.semistable)) + " weak " +
                         tuple_of(s.weak_ranks) + " possible " + tuple_of(s.possible_weak_ranks));
    };
    const auto& n = b.curve.node(node);
    out.add("node", std::to_string(node) + " (" + b.curve.component(n.a).label + "-" +
                        b.curve.component(n.b).label + ")");
    block("block.first", left);
    block("block.second", right);
    const auto v = compose_blocks(b, left, right, node, q.strict);
    verdict_fields(out, v, Notion::ell(q.strict));
    out.exit(exit_for(v.status));
}

void run_twist(Builder& out, const Document& doc, const BundleData& b, const Query& q) {
    const auto& line = doc.line(q.line).data;
    const auto twisted = twist(b, line);
    const auto before = decide_ell(b, q.strict);
    const auto after = decide_ell(twisted, q.strict);
    out.add("line", q.line + " " + per_component(b.curve, line.degrees));
    out.add("chi.before", euler_characteristic(b));
    out.add("chi.after", euler_characteristic(twisted));
    out.add("degrees.after", per_component(b.curve, twisted.degrees));
    out.add("splittings.after", splittings_of(twisted));
    out.add("status.before", std::string(to_string(before.status)));
    verdict_fields(out, after, Notion::ell(q.strict));
    out.exit(exit_for(after.status));
}

void extension_fields(Builder& out, const ExtensionResult& ext) {
    const auto& fam = ext.final_family.special_fiber;
    out.add("steps", static_cast<Int>(ext.trace.size()));
    std::string margins;
    for (const auto& m : ext.margins)
        margins += (margins.empty() ? "" : " ") + format_rational(m);
    out.add("margins", margins);
    for (std::size_t i = 0; i < ext.trace.size(); ++i) {
        const auto& s = ext.trace[i];
        out.add("step." + std::to_string(i + 1),
                "modify along " + tuple_of(s.destabilizer->ranks) + ": degrees " +
                    tuple_of(s.before.degrees) + " -> " + tuple_of(s.after.degrees) + ", chi " +
                    std::to_string(s.chi_before) + " -> " + std::to_string(s.chi_after));
        out.notes(s.notes, "step." + std::to_string(i + 1) + ".note");
    }
    out.add("polarization", ext.polarization.to_string());
    out.add("final.degrees", per_component(fam.curve, fam.degrees));
    out.add("final.splittings", splittings_of(fam));
    if (!ext.reason.empty())
        out.add("reason", ext.reason);
}

void run_langton(Builder& out, const Document& doc, const BundleData& b, const Query& q) {
    std::vector<int> singular(b.curve.num_nodes(), 0);
    for (const auto& [node, length] : q.blowups) {
        if (node >= singular.size())
            fail(ErrorKind::Precondition, "node " + std::to_string(node) + " does not exist");
        singular[node] = length;
    }
    const auto family = make_family(b, singular);
    const auto& w = doc.polarization(q.polarization).weights;
    if (q.twist.empty()) {
        const auto ext = semistable_extension(family, w, q.max_steps);
        out.add("result", std::string(to_string(ext.outcome)));
        out.exit(ext.outcome == ExtensionOutcome::Success ? exit_code::yes
                                                          : exit_code::indeterminate);
        extension_fields(out, ext);
        return;
    }
    const auto report = twist_extend_untwist(family, doc.line(q.twist).data, w, q.max_steps);
    out.add("result", std::string(to_string(report.extension.outcome)));
    out.exit(report.extension.outcome == ExtensionOutcome::Success ? exit_code::yes
                                                                   : exit_code::indeterminate);
    extension_fields(out, report.extension);
    const auto& u = report.untwisted;
    out.add("untwisted.degrees", per_component(u.curve, u.degrees));
    verdict_fields(out, report.ell_semistable, Notion::ell(false), "untwisted.");
    out.add("transfer", report.transfer_note);
}

void run_oracle(Builder& out, const BundleData& b, const Query& q) {
    auto model = q.model ? q.model : achievability_of(b.gluing);
    if (!model)
        fail(ErrorKind::DecisionModeUnavailable,
             "gluing is unspecified; choose an achievability model with --model");
    OracleOptions options;
    options.degree_floor = q.degree_floor;
    if (q.budget)
        options.budget = *q.budget;
    const auto res = oracle_max_chi(b, q.rank_vector, *model, options);
    const auto bracket = chi_bracket(b, q.rank_vector);
    out.add("result", res.max_chi);
    out.add("rank_vector", tuple_of(q.rank_vector));
    out.add("oracle.model", std::string(to_string(*model)));
    out.add("bracket", "[" + std::to_string(bracket.lower) + ", " + std::to_string(bracket.upper) +
                           "]");
    out.add("enumerated", static_cast<Int>(res.enumerated));
    for (std::size_t i = 0; i < res.realizations.size(); ++i) {
        const auto& r = res.realizations[i];
        out.add("realization." + std::to_string(i + 1),
                "degrees " + tuple_of(r.degrees) + " overlaps " + tuple_of(r.overlaps));
    }
}

void dispatch(Builder& out, const Document& doc, const BundleData& b, const Query& q) {
    const auto& c = q.command;
    if (c == "chi") {
        run_chi(out, b);
    } else if (c == "check-ell") {
        const auto v = decide_ell(b, q.strict);
        verdict_fields(out, v, Notion::ell(q.strict));
        out.exit(exit_for(v.status));
    } else if (c == "check-w") {
        const auto& pol = doc.polarization(q.polarization);
        const auto v = decide_w(b, pol.weights, q.strict);
        out.add("polarization", pol.name + " " + pol.weights.to_string());
        verdict_fields(out, v, Notion::w(pol.weights, q.strict));
        out.exit(exit_for(v.status));
    } else if (c == "find-polarization") {
        run_find_polarization(out, b, q.strict);
    } else if (c == "glue") {
        run_glue(out, b, q);
    } else if (c == "compact-type") {
        const auto v = decide_compact_type(b, q.strict);
        verdict_fields(out, v, Notion::ell(q.strict));
        out.exit(exit_for(v.status));
    } else if (c == "twist") {
        run_twist(out, doc, b, q);
    } else if (c == "langton") {
        run_langton(out, doc, b, q);
    } else if (c == "oracle") {
        run_oracle(out, b, q);
    } else {
        fail(ErrorKind::Usage, "unknown query '" + c + "'");
    }
}

} // namespace

Report run_query(const Document& document, const Query& query) {
    Report report;
    Builder out(report);
    out.add("tool", std::string(tool_name));
    out.add("version", std::string(tool_version));
    out.add("digest", document_digest(document));
    out.add("query", query.text);

    const NamedBundle* bundle = nullptr;
    try {
        bundle = &document.bundle(query.bundle);
    } catch (const Error& e) {
        out.add("bundle", query.bundle.empty() ? "-" : query.bundle);
        out.add("result", "Error");
        out.add("error", e.what());
        out.exit(exit_code_for(e.kind()));
        return report;
    }
    const auto& b = bundle->data;
    out.add("bundle", bundle->name);
    out.add("gluing", std::string(to_string(b.gluing)));
    const auto model = achievability_of(b.gluing);
    out.add("model", model ? std::string(to_string(*model)) : "bracket");

    const auto header = report.fields.size();
    try {
        dispatch(out, document, b, query);
    } catch (const Error& e) {
        report.fields.resize(header);
        out.add("result", "Error");
        out.add("error", e.what());
        out.exit(exit_code_for(e.kind()));
    } catch (const std::exception& e) {
        report.fields.resize(header);
        out.add("result", "Error");
        out.add("error", std::string("Internal: ") + e.what());
        out.exit(exit_code::internal);
    }
    return report;
}

Report run_query(const Document& document, std::string_view query) {
    try {
        return run_query(document, parse_query(query));
    } catch (const Error& e) {
        Report report;
        Builder out(report);
        out.add("tool", std::string(tool_name));
        out.add("version", std::string(tool_version));
        out.add("digest", document_digest(document));
        out.add("query", std::string(query));
        out.add("result", "Error");
        out.add("error", e.what());
        out.exit(exit_code_for(e.kind()));
        return report;
    }
}

std::string render(const Report& report, ReportFormat format) {
    std::string out;
    const char* sep = format == ReportFormat::Machine ? "\t" : ": ";
    for (const auto& [key, value] : report.fields) {
        std::string v;
        for (char c : value) {
            if (c == '\n')
                v += "\\n";
            else if (c == '\t' && format == ReportFormat::Machine)
                v += "\\t";
            else
                v += c;
        }
        out += key + sep + v + "\n";
    }
    return out;
}

} // namespace lstab
