// lstab: run stability queries on a bundle description file.
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "lstab/error.hpp"
#include "lstab/report.hpp"

namespace {

int fail_with(int code, const std::string& message) {
    std::cerr << "lstab: " << message << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    using namespace lstab;

    CLI::App app{"Certified stability checks for vector bundles on nodal curves", "lstab"};
    std::string path;
    std::string format = "text";
    std::vector<std::string> extra;
    bool canonical = false;
    bool sequential = false;
    app.add_option("file", path, "input document ('-' for stdin)")->required();
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--query", extra, "additional query, e.g. \"check-ell --strict\"");
    app.add_flag("--canonical", canonical, "print the canonical form of the document and exit");
    app.add_flag("--sequential", sequential, "evaluate queries one at a time");
    app.set_version_flag("--version", std::string(tool_version));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code::usage;
    }

    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            return fail_with(exit_code::no_input, "cannot open '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), {});
    }

    try {
        const Document doc = parse_document(text);
        if (canonical) {
            std::cout << serialize_document(doc);
            return 0;
        }
        std::vector<Query> queries;
        for (const auto& q : doc.queries)
            queries.push_back(parse_query(q));
        for (const auto& q : extra) {
            try {
                queries.push_back(parse_query(q));
            } catch (const Error& e) {
                return fail_with(exit_code::usage, e.what());
            }
        }
        if (queries.empty())
            return fail_with(exit_code::usage, "no queries (add 'query' lines or --query)");

        // Queries are independent; evaluate them concurrently and print in order.
        const auto policy = sequential ? std::launch::deferred : std::launch::async;
        std::vector<std::future<Report>> pending;
        for (const auto& q : queries)
            pending.push_back(std::async(policy, [&doc, q] { return run_query(doc, q); }));

        const auto fmt = format == "machine" ? ReportFormat::Machine : ReportFormat::Text;
        int rc = 0;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const auto report = pending[i].get();
            if (i)
                std::cout << "\n";
            std::cout << render(report, fmt);
            rc = std::max(rc, report.exit_code);
        }
        return rc;
    } catch (const Error& e) {
        return fail_with(exit_code_for(e.kind()), e.what());
    } catch (const std::exception& e) {
        return fail_with(exit_code::internal, std::string("internal error: ") + e.what());
    }
}
