#include "lstab/subsheaf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lstab/error.hpp"

namespace lstab {

SubsheafType make_type(const BundleData& bundle, std::vector<int> ranks) {
    SubsheafType type{std::move(ranks), std::vector<Int>(bundle.curve.num_components(), 0),
                      std::vector<int>(bundle.curve.num_nodes(), 0)};
    validate_type(bundle, type);
    return type;
}

void validate_type(const BundleData& bundle, const SubsheafType& type) {
    const auto n = bundle.curve.num_components();
    if (type.ranks.size() != n)
        fail(ErrorKind::Validation, "rank vector has " + std::to_string(type.ranks.size()) +
                                        " entries for " + std::to_string(n) + " components");
    bool all_zero = true;
    bool all_full = true;
    for (std::size_t i = 0; i < n; ++i) {
        const int r = type.ranks[i];
        if (r < 0 || r > bundle.rank)
            fail(ErrorKind::Validation, "rank " + std::to_string(r) + " on " +
                                            bundle.curve.component(i).label + " outside [0, " +
                                            std::to_string(bundle.rank) + "]");
        all_zero = all_zero && r == 0;
        all_full = all_full && r == bundle.rank;
    }
    if (all_zero)
        fail(ErrorKind::Validation, "rank vector is zero");
    if (all_full)
        fail(ErrorKind::Validation, "rank vector is the full bundle");
    if (type.degrees.size() != n)
        fail(ErrorKind::Validation, "degree vector has the wrong length");
    for (std::size_t i = 0; i < n; ++i)
        if (type.ranks[i] == 0 && type.degrees[i] != 0)
            fail(ErrorKind::Validation, "nonzero degree on " + bundle.curve.component(i).label +
                                            " where the rank is 0");
    if (type.overlaps.size() != bundle.curve.num_nodes())
        fail(ErrorKind::Validation, "overlap vector has the wrong length");
    for (std::size_t k = 0; k < type.overlaps.size(); ++k) {
        const auto& node = bundle.curve.node(k);
        const int bound = std::min(type.ranks[node.a], type.ranks[node.b]);
        if (type.overlaps[k] < 0 || type.overlaps[k] > bound)
            fail(ErrorKind::Validation, "overlap at node " + std::to_string(k) + " outside [0, " +
                                            std::to_string(bound) + "]");
    }
}

bool is_ell_admissible(const SubsheafType& type) noexcept {
    return std::adjacent_find(type.ranks.begin(), type.ranks.end(), std::not_equal_to<>()) ==
           type.ranks.end();
}

std::string_view to_string(Achievability model) noexcept {
    return model == Achievability::Generic ? "generic" : "aligned";
}

int max_overlap(int rank_a, int rank_b, int rank, Achievability model) noexcept {
    if (model == Achievability::Aligned)
        return std::min(rank_a, rank_b);
    return std::max(0, rank_a + rank_b - rank);
}

std::optional<Achievability> achievability_of(Gluing gluing) noexcept {
    switch (gluing) {
    case Gluing::Generic: return Achievability::Generic;
    case Gluing::Aligned: return Achievability::Aligned;
    case Gluing::Unspecified: return std::nullopt;
    }
    return std::nullopt;
}

Int max_chi_saturated(const BundleData& bundle, std::size_t component, int sub_rank) {
    const auto& c = bundle.curve.component(component);
    if (sub_rank < 1 || sub_rank > bundle.rank)
        fail(ErrorKind::Precondition, "subsheaf rank " + std::to_string(sub_rank) +
                                          " outside [1, " + std::to_string(bundle.rank) + "]");
    if (c.genus != 0)
        fail(ErrorKind::DecisionModeUnavailable, "component " + c.label + " has genus " +
                                                     std::to_string(c.genus));
    const auto& split = bundle.splittings.at(component);
    if (!split)
        fail(ErrorKind::DecisionModeUnavailable, "component " + c.label + " has no splitting type");
    return std::accumulate(split->begin(), split->begin() + sub_rank, Int{0}) + sub_rank;
}

Int component_max_chi(const BundleData& bundle, std::size_t component, int sub_rank) {
    if (sub_rank == bundle.rank)
        return component_chi(bundle, component);
    const auto& c = bundle.curve.component(component);
    if (c.genus == 0 && bundle.splittings.at(component))
        return max_chi_saturated(bundle, component, sub_rank);
    if (const auto& declared = bundle.declared_max_chi.at(component))
        return declared->at(static_cast<std::size_t>(sub_rank - 1));
    fail(ErrorKind::DecisionModeUnavailable,
         "no splitting type or declared maxima on component " + c.label);
}

namespace {

Int components_part(const BundleData& bundle, std::span<const int> ranks) {
    Int total = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] > 0)
            total += component_max_chi(bundle, i, ranks[i]);
    return total;
}

// Sum over nodes of r_a + r_b - r_P with r_P at the model maximum.
Int node_penalty(const BundleData& bundle, std::span<const int> ranks, Achievability model) {
    Int total = 0;
    for (const auto& node : bundle.curve.nodes()) {
        const int a = ranks[node.a];
        const int b = ranks[node.b];
        total += a + b - max_overlap(a, b, bundle.rank, model);
    }
    return total;
}

void check_rank_vector(const BundleData& bundle, std::span<const int> ranks) {
    if (ranks.size() != bundle.curve.num_components())
        fail(ErrorKind::Validation, "rank vector has the wrong length");
}

} // namespace

ChiBracket chi_bracket(const BundleData& bundle, std::span<const int> ranks) {
    check_rank_vector(bundle, ranks);
    const Int base = components_part(bundle, ranks);
    return {base - node_penalty(bundle, ranks, Achievability::Generic),
            base - node_penalty(bundle, ranks, Achievability::Aligned)};
}

ChiBracket chi_bracket(const BundleData& bundle, const SubsheafType& type) {
    validate_type(bundle, type);
    return chi_bracket(bundle, std::span<const int>(type.ranks));
}

Int model_chi(const BundleData& bundle, std::span<const int> ranks, Achievability model) {
    check_rank_vector(bundle, ranks);
    return components_part(bundle, ranks) - node_penalty(bundle, ranks, model);
}

SubsheafType maximal_realization(const BundleData& bundle, std::vector<int> ranks,
                                 Achievability model) {
    auto type = make_type(bundle, std::move(ranks));
    for (std::size_t i = 0; i < type.ranks.size(); ++i) {
        const int k = type.ranks[i];
        if (k > 0) {
            const Int genus = bundle.curve.component(i).genus;
            type.degrees[i] = component_max_chi(bundle, i, k) - Int{k} * (1 - genus);
        }
    }
    for (std::size_t k = 0; k < bundle.curve.num_nodes(); ++k) {
        const auto& node = bundle.curve.node(k);
        type.overlaps[k] = max_overlap(type.ranks[node.a], type.ranks[node.b], bundle.rank, model);
    }
    return type;
}

Int realization_chi(const BundleData& bundle, const SubsheafType& type) {
    validate_type(bundle, type);
    Int chi = 0;
    for (std::size_t i = 0; i < type.ranks.size(); ++i)
        if (type.ranks[i] > 0)
            chi += type.degrees[i] + Int{type.ranks[i]} * (1 - bundle.curve.component(i).genus);
    for (std::size_t k = 0; k < bundle.curve.num_nodes(); ++k) {
        const auto& node = bundle.curve.node(k);
        chi -= type.ranks[node.a] + type.ranks[node.b] - type.overlaps[k];
    }
    return chi;
}

Notion Notion::ell(bool strict) {
    return {strict ? NotionKind::EllStable : NotionKind::EllSemistable, std::nullopt};
}

Notion Notion::w(Polarization polarization, bool strict) {
    return {strict ? NotionKind::WStable : NotionKind::WSemistable, std::move(polarization)};
}

bool Notion::strict() const noexcept {
    return kind == NotionKind::EllStable || kind == NotionKind::WStable;
}

bool Notion::is_ell() const noexcept {
    return kind == NotionKind::EllSemistable || kind == NotionKind::EllStable;
}

std::string Notion::name() const {
    std::string out = is_ell() ? "ℓ-" : "w-";
    return out + (strict() ? "stable" : "semistable");
}

namespace {

std::string provenance_of(const BundleData& bundle, const SubsheafType& type) {
    std::vector<std::string> declared;
    bool unavailable = false;
    for (std::size_t i = 0; i < type.ranks.size(); ++i) {
        const int k = type.ranks[i];
        if (k == 0 || k == bundle.rank)
            continue;
        const auto& c = bundle.curve.component(i);
        if (c.genus == 0 && bundle.splittings[i])
            continue;
        if (bundle.declared_max_chi[i])
            declared.push_back(c.label);
        else
            unavailable = true;
    }
    if (unavailable)
        return "unchecked (maxima unavailable)";
    if (declared.empty())
        return "splitting types";
    std::string out = "declared maxima on";
    for (const auto& l : declared)
        out += " " + l;
    return out;
}

} // namespace

Certificate verify_destabilizer(const BundleData& bundle, const SubsheafType& type,
                                const Notion& notion, Int declared_chi) {
    validate_type(bundle, type);
    if (notion.is_ell() && !is_ell_admissible(type))
        fail(ErrorKind::InadmissibleType, "ℓ-notions only test subsheaves of constant rank");

    Certificate cert{type, notion, declared_chi, {}, {}, false, {}, provenance_of(bundle, type), {}};
    if (cert.provenance.rfind("unchecked", 0) != 0) {
        const auto bracket = chi_bracket(bundle, std::span<const int>(type.ranks));
        if (declared_chi > bracket.upper)
            fail(ErrorKind::ImplausibleChi, "declared chi " + std::to_string(declared_chi) +
                                                " exceeds the certified upper bound " +
                                                std::to_string(bracket.upper));
    }

    const Int chi_e = euler_characteristic(bundle);
    if (notion.is_ell()) {
        const int sub_rank = type.ranks.front();
        cert.lhs = Rational(declared_chi, sub_rank);
        cert.rhs = Rational(chi_e, bundle.rank);
    } else {
        if (!notion.polarization)
            fail(ErrorKind::InvalidPolarization, "w-notion without a polarization");
        cert.lhs = Rational(declared_chi) * bundle.rank;
        cert.rhs = Rational(chi_e) * notion.polarization->weighted_rank(type.ranks);
    }

    const int cmp = cert.lhs.compare(cert.rhs);
    cert.relation = cmp > 0 ? ">" : (cmp == 0 ? "=" : "<");
    cert.violated = notion.strict() ? cmp >= 0 : cmp > 0;

    std::ostringstream text;
    text << format_rational(cert.lhs) << ' ' << cert.relation << ' ' << format_rational(cert.rhs)
         << (cert.violated ? ": " : ": not ") << notion.name() << " violated";
    cert.explanation = text.str();
    return cert;
}

} // namespace lstab
