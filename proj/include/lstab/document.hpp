#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lstab/bundle.hpp"
#include "lstab/polarization.hpp"

namespace lstab {

struct NamedBundle {
    std::string name;
    BundleData data;

    bool operator==(const NamedBundle&) const = default;
};

struct NamedLine {
    std::string name;
    LineBundleData data;

    bool operator==(const NamedLine&) const = default;
};

struct NamedPolarization {
    std::string name;
    Polarization weights;

    bool operator==(const NamedPolarization&) const = default;
};

/// Parsed input file: one curve, then named bundles, line bundles and
/// polarizations over it, and the queries to run (verbatim command text).
struct Document {
    NodalCurve curve;
    std::vector<NamedBundle> bundles;
    std::vector<NamedLine> lines;
    std::vector<NamedPolarization> polarizations;
    std::vector<std::string> queries;

    const NamedBundle& bundle(std::string_view name) const; // "" = first bundle
    const NamedLine& line(std::string_view name) const;
    const NamedPolarization& polarization(std::string_view name) const;

    bool operator==(const Document&) const = default;
};

// Throws Error(Parse) or Error(Validation); the message starts with
// "line L, column C: ".
Document parse_document(std::string_view text);

// Canonical text form; parse_document(serialize_document(d)) == d.
std::string serialize_document(const Document& document);

} // namespace lstab
