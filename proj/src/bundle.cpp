#include "lstab/bundle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "lstab/error.hpp"

namespace lstab {

std::string_view to_string(Gluing gluing) noexcept {
    switch (gluing) {
    case Gluing::Generic: return "generic";
    case Gluing::Aligned: return "aligned";
    case Gluing::Unspecified: return "unspecified";
    }
    return "unspecified";
}

Gluing parse_gluing(std::string_view text) {
    if (text == "generic")
        return Gluing::Generic;
    if (text == "aligned")
        return Gluing::Aligned;
    if (text == "unspecified")
        return Gluing::Unspecified;
    fail(ErrorKind::Validation, "unknown gluing '" + std::string(text) +
                                    "' (expected generic, aligned or unspecified)");
}

BundleData make_bundle(NodalCurve curve, int rank, std::vector<Int> degrees,
                       std::vector<std::optional<Splitting>> splittings, Gluing gluing,
                       std::vector<std::optional<std::vector<Int>>> declared) {
    const auto n = curve.num_components();
    if (splittings.empty())
        splittings.resize(n);
    if (declared.empty())
        declared.resize(n);
    for (auto& s : splittings)
        if (s)
            std::sort(s->begin(), s->end(), std::greater<>());
    BundleData bundle{std::move(curve), rank, std::move(degrees), std::move(splittings),
                      std::move(declared), gluing};
    validate(bundle);
    return bundle;
}

void validate(const BundleData& bundle) {
    const auto n = bundle.curve.num_components();
    if (bundle.rank < 1)
        fail(ErrorKind::Validation, "rank must be positive");
    if (bundle.degrees.size() != n)
        fail(ErrorKind::Validation, "expected " + std::to_string(n) + " degrees, got " +
                                        std::to_string(bundle.degrees.size()));
    if (bundle.splittings.size() != n || bundle.declared_max_chi.size() != n)
        fail(ErrorKind::Validation, "per-component data has the wrong length");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = bundle.curve.component(i);
        if (const auto& s = bundle.splittings[i]) {
            if (c.genus != 0)
                fail(ErrorKind::Validation,
                     "splitting given on component " + c.label + " of positive genus");
            if (static_cast<int>(s->size()) != bundle.rank)
                fail(ErrorKind::Validation, "splitting on " + c.label + " has " +
                                                std::to_string(s->size()) + " entries, rank is " +
                                                std::to_string(bundle.rank));
            if (!std::is_sorted(s->begin(), s->end(), std::greater<>()))
                fail(ErrorKind::Validation, "splitting on " + c.label + " is not sorted");
            const Int sum = std::accumulate(s->begin(), s->end(), Int{0});
            if (sum != bundle.degrees[i])
                fail(ErrorKind::Validation, "splitting sum " + std::to_string(sum) +
                                                " ≠ degree " +
                                                std::to_string(bundle.degrees[i]) + " on " +
                                                c.label);
        }
        if (const auto& d = bundle.declared_max_chi[i])
            if (static_cast<int>(d->size()) != bundle.rank - 1)
                fail(ErrorKind::Validation, "declared maxima on " + c.label + " need " +
                                                std::to_string(bundle.rank - 1) + " entries");
    }
}

bool in_decision_mode(const BundleData& bundle) {
    if (bundle.curve.has_self_nodes())
        return false;
    for (std::size_t i = 0; i < bundle.curve.num_components(); ++i)
        if (bundle.curve.component(i).genus != 0 || !bundle.splittings[i])
            return false;
    return true;
}

Int LineBundleData::total_degree() const {
    return std::accumulate(degrees.begin(), degrees.end(), Int{0});
}

LineBundleData LineBundleData::operator-() const {
    LineBundleData out = *this;
    for (auto& d : out.degrees)
        d = -d;
    return out;
}

Int component_chi(const BundleData& bundle, std::size_t component) {
    const Int genus = bundle.curve.component(component).genus;
    return bundle.degrees.at(component) + Int{bundle.rank} * (1 - genus);
}

Int total_degree(const BundleData& bundle) {
    return std::accumulate(bundle.degrees.begin(), bundle.degrees.end(), Int{0});
}

Int euler_characteristic(const BundleData& bundle) {
    Int chi = 0;
    for (std::size_t i = 0; i < bundle.curve.num_components(); ++i)
        chi += component_chi(bundle, i);
    return chi - Int{bundle.rank} * static_cast<Int>(bundle.curve.num_nodes());
}

BundleData restrict(const BundleData& bundle, const Subcurve& sub) {
    auto induced = induced_curve(bundle.curve, sub);
    BundleData out{std::move(induced.curve), bundle.rank, {}, {}, {}, bundle.gluing};
    for (auto i : induced.component_map) {
        out.degrees.push_back(bundle.degrees[i]);
        out.splittings.push_back(bundle.splittings[i]);
        out.declared_max_chi.push_back(bundle.declared_max_chi[i]);
    }
    return out;
}

BundleData twist(const BundleData& bundle, const LineBundleData& line) {
    if (line.degrees.size() != bundle.curve.num_components())
        fail(ErrorKind::Precondition, "line bundle lives on a different curve");
    BundleData out = bundle;
    for (std::size_t i = 0; i < line.degrees.size(); ++i) {
        const Int shift = line.degrees[i];
        out.degrees[i] = checked_add(out.degrees[i], checked_mul(bundle.rank, shift));
        if (auto& s = out.splittings[i])
            for (auto& a : *s)
                a += shift;
        if (auto& d = out.declared_max_chi[i])
            for (std::size_t k = 0; k < d->size(); ++k)
                (*d)[k] += static_cast<Int>(k + 1) * shift;
    }
    return out;
}

} // namespace lstab
