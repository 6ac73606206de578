#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lstab/error.hpp"
#include "lstab/feasibility.hpp"
#include "lstab/report.hpp"
#include "lstab/stability.hpp"

namespace py = pybind11;
using namespace lstab;

namespace {

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["status"] = std::string(to_string(v.status));
    if (v.witness) {
        d["witness_ranks"] = v.witness->type.ranks;
        d["witness_chi"] = v.witness->declared_chi;
    } else {
        d["witness_ranks"] = py::none();
        d["witness_chi"] = py::none();
    }
    d["notes"] = v.notes;
    return d;
}

Polarization to_polarization(const std::vector<std::string>& weights) {
    std::vector<Rational> w;
    for (const auto& s : weights)
        w.push_back(parse_rational(s));
    return Polarization(std::move(w));
}

} // namespace

PYBIND11_MODULE(lstab, m) {
    m.doc() = "Certified stability checks for vector bundles on nodal curves";
    m.attr("__version__") = std::string(tool_version);

    static py::exception<Error> error(m, "LstabError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<Document>(m, "Document")
        .def("serialize", &serialize_document)
        .def("digest", &document_digest)
        .def_property_readonly("bundles",
                               [](const Document& d) {
                                   std::vector<std::string> names;
                                   for (const auto& b : d.bundles)
                                       names.push_back(b.name);
                                   return names;
                               })
        .def_readonly("queries", &Document::queries)
        .def("__eq__", [](const Document& a, const Document& b) { return a == b; });

    m.def("parse_document", &parse_document, py::arg("text"));

    m.def(
        "run_query",
        [](const Document& doc, const std::string& query) {
            const auto r = run_query(doc, query);
            return py::make_tuple(r.exit_code, r.fields);
        },
        py::arg("document"), py::arg("query"),
        "Returns (exit_code, [(key, value), ...]).");

    m.def(
        "render_query",
        [](const Document& doc, const std::string& query, bool machine) {
            return render(run_query(doc, query),
                          machine ? ReportFormat::Machine : ReportFormat::Text);
        },
        py::arg("document"), py::arg("query"), py::arg("machine") = false);

    m.def(
        "euler_characteristic",
        [](const Document& doc, const std::string& bundle) {
            return euler_characteristic(doc.bundle(bundle).data);
        },
        py::arg("document"), py::arg("bundle") = "");

    m.def(
        "decide_ell",
        [](const Document& doc, bool strict, const std::string& bundle) {
            return verdict_dict(decide_ell(doc.bundle(bundle).data, strict));
        },
        py::arg("document"), py::arg("strict") = false, py::arg("bundle") = "");

    m.def(
        "decide_w",
        [](const Document& doc, const std::vector<std::string>& weights, bool strict,
           const std::string& bundle) {
            return verdict_dict(decide_w(doc.bundle(bundle).data, to_polarization(weights), strict));
        },
        py::arg("document"), py::arg("weights"), py::arg("strict") = false,
        py::arg("bundle") = "", "Weights are rational strings such as \"1/3\".");

    m.def(
        "exists_polarization",
        [](const Document& doc, bool strict, const std::string& bundle) {
            const auto r = exists_polarization(doc.bundle(bundle).data, strict);
            py::dict d;
            d["outcome"] = std::string(to_string(r.outcome));
            if (r.witness) {
                std::vector<std::string> w;
                for (const auto& x : r.witness->weights())
                    w.push_back(format_rational(x));
                d["witness"] = w;
            } else {
                d["witness"] = py::none();
            }
            d["certificate"] = r.certificate ? py::cast(r.certificate->summary) : py::none();
            return d;
        },
        py::arg("document"), py::arg("strict") = false, py::arg("bundle") = "");
}
