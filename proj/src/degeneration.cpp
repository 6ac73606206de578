#include "lstab/degeneration.hpp"

#include <algorithm>
#include <functional>

#include "lstab/error.hpp"

namespace lstab {

bool FamilyModel::regular_total_space() const noexcept {
    return std::all_of(node_singularity.begin(), node_singularity.end(),
                       [](int k) { return k == 0; });
}

std::string_view to_string(ExtensionOutcome outcome) noexcept {
    return outcome == ExtensionOutcome::Success ? "Success" : "Stalled";
}

FamilyModel make_family(BundleData special_fiber, std::vector<int> node_singularity) {
    validate(special_fiber);
    if (node_singularity.empty())
        node_singularity.assign(special_fiber.curve.num_nodes(), 0);
    if (node_singularity.size() != special_fiber.curve.num_nodes())
        fail(ErrorKind::Validation, "one singularity index per node expected");
    if (std::any_of(node_singularity.begin(), node_singularity.end(), [](int k) { return k < 0; }))
        fail(ErrorKind::Validation, "singularity indices must be nonnegative");
    const int rank = special_fiber.rank;
    const Int degree = total_degree(special_fiber);
    return {std::move(special_fiber), rank, degree, std::move(node_singularity)};
}

FamilyModel regularize(const FamilyModel& family) {
    auto bundle = family.special_fiber;
    for (std::size_t k = 0; k < family.node_singularity.size(); ++k) {
        const int length = family.node_singularity[k];
        if (length == 0)
            continue;
        // Original node indices survive insertion; new edges are appended.
        bundle.curve = insert_rational_chain(bundle.curve, k, length);
        for (int j = 0; j < length; ++j) {
            bundle.degrees.push_back(0);
            bundle.splittings.push_back(Splitting(static_cast<std::size_t>(bundle.rank), 0));
            bundle.declared_max_chi.push_back(std::nullopt);
        }
    }
    validate(bundle);
    FamilyModel out = family;
    out.node_singularity.assign(bundle.curve.num_nodes(), 0);
    out.special_fiber = std::move(bundle);
    return out;
}

LineBundleData component_twist_line(const NodalCurve& curve, std::size_t component) {
    LineBundleData line;
    for (std::size_t i = 0; i < curve.num_components(); ++i)
        line.degrees.push_back(-curve.intersection(component, i));
    return line;
}

namespace {

void require_regular(const FamilyModel& family) {
    if (!family.regular_total_space())
        fail(ErrorKind::NotRegular, "total space is singular at a node; regularize first");
}

Splitting balanced(Int degree, int rank) {
    Splitting out(static_cast<std::size_t>(rank));
    const Int base = degree >= 0 ? degree / rank : -((-degree + rank - 1) / rank);
    const Int extra = degree - base * rank;
    for (int j = 0; j < rank; ++j)
        out[static_cast<std::size_t>(j)] = base + (j < extra ? 1 : 0);
    return out;
}

} // namespace

FamilyModel component_twist(const FamilyModel& family, std::size_t component) {
    require_regular(family);
    if (component >= family.special_fiber.curve.num_components())
        fail(ErrorKind::Precondition, "component index out of range");
    FamilyModel out = family;
    out.special_fiber =
        twist(family.special_fiber, component_twist_line(family.special_fiber.curve, component));
    return out;
}

ModificationStep fiber_modification(const FamilyModel& family, const SubsheafType& destabilizer) {
    require_regular(family);
    const auto& before = family.special_fiber;
    const auto& curve = before.curve;
    const int r = before.rank;
    const auto n = curve.num_components();
    if (destabilizer.ranks.size() == n &&
        std::all_of(destabilizer.ranks.begin(), destabilizer.ranks.end(),
                    [&](int x) { return x == r; }))
        fail(ErrorKind::NotDestabilized, "modification along the zero quotient");
    validate_type(before, destabilizer);
    const auto& ranks = destabilizer.ranks;

    std::vector<Int> shift(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            shift[i] -= Int{r - ranks[j]} * curve.intersection(j, i);

    ModificationStep step{StepKind::FiberModification, std::nullopt, destabilizer, before, before,
                          0, 0, 0, 0, {}};

    auto extreme = [&](int x) { return x == 0 || x == r; };
    if (std::all_of(ranks.begin(), ranks.end(), extreme)) {
        LineBundleData line;
        for (auto s : shift)
            line.degrees.push_back(s / r);
        step.after = twist(before, line);
        step.notes.push_back("quotient supported on whole components: twist by a line bundle");
    } else {
        BundleData after = before;
        for (std::size_t i = 0; i < n; ++i) {
            after.degrees[i] += shift[i];
            bool neighbours_match = true;
            bool neighbours_extreme = true;
            for (const auto& node : curve.nodes()) {
                if (!node.touches(i))
                    continue;
                const int other = ranks[node.other(i)];
                neighbours_match = neighbours_match && other == ranks[i];
                neighbours_extreme = neighbours_extreme && extreme(other);
            }
            const auto& label = curve.component(i).label;
            if (extreme(ranks[i]) && neighbours_match)
                continue;
            if (extreme(ranks[i]) && neighbours_extreme && shift[i] % r == 0) {
                const Int s = shift[i] / r;
                if (auto& split = after.splittings[i])
                    for (auto& a : *split)
                        a += s;
                if (auto& d = after.declared_max_chi[i])
                    for (std::size_t k = 0; k < d->size(); ++k)
                        (*d)[k] += Int(k + 1) * s;
                continue;
            }
            if (after.splittings[i]) {
                after.splittings[i] = balanced(after.degrees[i], r);
                step.notes.push_back("splitting on " + label +
                                     " re-derived as balanced (generic extension model)");
            }
            if (after.declared_max_chi[i]) {
                after.declared_max_chi[i].reset();
                step.notes.push_back("declared maxima on " + label + " dropped");
            }
        }
        validate(after);
        step.after = std::move(after);
    }
    step.chi_before = euler_characteristic(step.before);
    step.chi_after = euler_characteristic(step.after);
    step.degree_before = total_degree(step.before);
    step.degree_after = total_degree(step.after);
    return step;
}

namespace {

// Harder-Narasimhan style choice: the violating rank vector of largest
// w-slope chi(F) / sum w_i r_i, the larger weighted rank on ties.
SubsheafType maximal_destabilizer(const BundleData& bundle, const Polarization& w) {
    const Int chi_e = euler_characteristic(bundle);
    std::optional<std::vector<int>> best;
    Rational best_slope, best_weight;
    for (const auto& ranks : proper_rank_vectors(bundle.curve.num_components(), bundle.rank)) {
        const Int chi = decisive_chi(bundle, ranks);
        const Rational weight = w.weighted_rank(ranks);
        if (Rational(chi * bundle.rank) <= chi_e * weight)
            continue;
        const Rational slope = Rational(chi) / weight;
        if (!best || slope > best_slope || (slope == best_slope && weight > best_weight)) {
            best = ranks;
            best_slope = slope;
            best_weight = weight;
        }
    }
    if (!best)
        fail(ErrorKind::RealizationUnavailable, "no destabilizing rank vector");
    return make_type(bundle, *best);
}

} // namespace

ModificationStep langton_step(const FamilyModel& family, const Polarization& w) {
    const auto verdict = decide_w(family.special_fiber, w, false);
    if (verdict.status == Status::CertifiedYes)
        fail(ErrorKind::NotDestabilized, "special fiber is already w-semistable");
    if (verdict.status == Status::Indeterminate || !verdict.witness)
        fail(ErrorKind::RealizationUnavailable, "no certified destabilizing subsheaf");
    return fiber_modification(family, maximal_destabilizer(family.special_fiber, w));
}

Rational violation_margin(const BundleData& bundle, const Polarization& w) {
    const Int chi_e = euler_characteristic(bundle);
    std::optional<Rational> best;
    for (const auto& ranks : proper_rank_vectors(bundle.curve.num_components(), bundle.rank)) {
        const Rational margin =
            Rational(decisive_chi(bundle, ranks) * bundle.rank) - chi_e * w.weighted_rank(ranks);
        if (!best || margin > *best)
            best = margin;
    }
    return best.value_or(Rational(0));
}

namespace {

Polarization extend_polarization(const Polarization& w, std::size_t total) {
    const auto added = total - w.size();
    if (added == 0)
        return w;
    const Rational smallest = *std::min_element(w.weights().begin(), w.weights().end());
    const Rational eps = smallest / (2 * static_cast<long>(added + 1));
    std::vector<Rational> weights;
    for (const auto& x : w.weights())
        weights.push_back(x * (1 - eps * static_cast<long>(added)));
    weights.resize(total, eps);
    return Polarization(std::move(weights));
}

} // namespace

ExtensionResult semistable_extension(const FamilyModel& family, const Polarization& w,
                                     int max_steps) {
    if (w.size() != family.special_fiber.curve.num_components())
        fail(ErrorKind::InvalidPolarization, "polarization does not match the special fiber");
    ExtensionResult result{ExtensionOutcome::Stalled, family, w, {}, {}, {}};
    if (!family.regular_total_space()) {
        result.final_family = regularize(family);
        result.polarization =
            extend_polarization(w, result.final_family.special_fiber.curve.num_components());
    }
    const auto& pol = result.polarization;
    result.margins.push_back(violation_margin(result.final_family.special_fiber, pol));

    for (int step = 0;; ++step) {
        const auto verdict = decide_w(result.final_family.special_fiber, pol, false);
        if (verdict.status == Status::CertifiedYes) {
            result.outcome = ExtensionOutcome::Success;
            return result;
        }
        if (verdict.status == Status::Indeterminate) {
            result.reason = "Indeterminate w-semistability verdict; gluing does not determine "
                            "the destabilizer";
            return result;
        }
        if (step == max_steps) {
            result.reason = "step limit " + std::to_string(max_steps) + " reached";
            return result;
        }
        auto modification = langton_step(result.final_family, pol);
        const auto& ranks = modification.destabilizer->ranks;
        if (std::adjacent_find(ranks.begin(), ranks.end(), std::not_equal_to<>()) == ranks.end()) {
            result.reason = "constant-rank destabilizer: the special fiber is not l-semistable "
                            "and the modification moves no degree";
            return result;
        }
        result.final_family.special_fiber = modification.after;
        result.trace.push_back(std::move(modification));
        const auto margin = violation_margin(result.final_family.special_fiber, pol);
        const auto previous = result.margins.back();
        result.margins.push_back(margin);
        if (margin >= previous) {
            result.reason = "violation margin did not decrease (" + format_rational(previous) +
                            " -> " + format_rational(margin) + ")";
            return result;
        }
    }
}

TwistWorkflowReport twist_extend_untwist(const FamilyModel& family, const LineBundleData& twist_by,
                                         const Polarization& w, int max_steps) {
    if (twist_by.degrees.size() != family.special_fiber.curve.num_components())
        fail(ErrorKind::Precondition, "twisting divisor lives on a different curve");
    if (twist_by.total_degree() == 0)
        fail(ErrorKind::Precondition, "twisting divisor must have non-zero relative degree");
    FamilyModel twisted = family;
    twisted.special_fiber = twist(family.special_fiber, twist_by);
    twisted.generic_degree += Int{family.generic_rank} * twist_by.total_degree();

    auto extension = semistable_extension(twisted, w, max_steps);
    auto back = -twist_by;
    back.degrees.resize(extension.final_family.special_fiber.curve.num_components(), 0);
    auto untwisted = twist(extension.final_family.special_fiber, back);
    auto verdict = decide_ell(untwisted, false);
    return {std::move(extension), std::move(untwisted), std::move(verdict),
            "special-fiber ℓ-verdict transfers to the generic fiber"};
}

} // namespace lstab
