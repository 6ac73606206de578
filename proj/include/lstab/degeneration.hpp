#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lstab/stability.hpp"

namespace lstab {

/// Special-fiber data of a bundle on a one-parameter family X -> B over a DVR.
/// Only X_0 is modeled; `generic_degree` records deg of the generic fiber
/// (= sum of the special-fiber degrees). `node_singularity[k]` is the A_k
/// index of the total space at node k (0 = regular there).
struct FamilyModel {
    BundleData special_fiber;
    int generic_rank = 1;
    Int generic_degree = 0;
    std::vector<int> node_singularity;

    bool regular_total_space() const noexcept;
};

FamilyModel make_family(BundleData special_fiber, std::vector<int> node_singularity = {});

// Resolves A_k points by inserting chains of k rational components; the
// bundle is trivial on the exceptional curves.
FamilyModel regularize(const FamilyModel& family);

// Multidegree of O(-Y)|_{X_0} for the component Y.
LineBundleData component_twist_line(const NodalCurve& curve, std::size_t component);

// E -> E(-Y): degrees shift by r (-Y . Y_i). Throws NotRegular.
FamilyModel component_twist(const FamilyModel& family, std::size_t component);

enum class StepKind { ComponentTwist, FiberModification };

struct ModificationStep {
    StepKind kind = StepKind::FiberModification;
    std::optional<std::size_t> component;     // ComponentTwist
    std::optional<SubsheafType> destabilizer; // FiberModification
    BundleData before;
    BundleData after;
    Int chi_before = 0, chi_after = 0;
    Int degree_before = 0, degree_after = 0;
    std::vector<std::string> notes; // model-dependent choices
};

/// Elementary modification of the family along E|_{X_0} -> E|_{X_0}/F.
///
/// The kernel E' has det E' = det E (-sum_j (r - r_j) Y_j), so the degree on
/// Y_i moves by -sum_j (r - r_j) Y_j . Y_i. Where every r_j is 0 or r this is
/// a twist by a line bundle and splittings shift exactly; elsewhere the
/// affected splittings are re-derived as balanced (generic extension model).
/// Throws NotDestabilized when the quotient is zero.
ModificationStep fiber_modification(const FamilyModel& family, const SubsheafType& destabilizer);

// One Langton step: modify along the maximal w-destabilizer of the special
// fiber. Throws NotDestabilized if the fiber is w-semistable and
// RealizationUnavailable if no certified destabilizer exists.
ModificationStep langton_step(const FamilyModel& family, const Polarization& w);

// max over proper rank vectors of chi(F) r - chi(E) sum w_i r_i, using the
// decisive chi of each rank vector.
Rational violation_margin(const BundleData& bundle, const Polarization& w);

enum class ExtensionOutcome { Success, Stalled };

std::string_view to_string(ExtensionOutcome outcome) noexcept;

struct ExtensionResult {
    ExtensionOutcome outcome = ExtensionOutcome::Stalled;
    FamilyModel final_family;
    Polarization polarization; // extended over exceptional components if any
    std::vector<ModificationStep> trace;
    std::vector<Rational> margins; // before the first step and after each step
    std::string reason;
};

// Iterates langton_step until the special fiber is w-semistable.
ExtensionResult semistable_extension(const FamilyModel& family, const Polarization& w,
                                     int max_steps = 64);

struct TwistWorkflowReport {
    ExtensionResult extension;
    BundleData untwisted;
    Verdict ell_semistable;
    std::string transfer_note;
};

// Twist by D (nonzero total degree), extend semistably, untwist by -D, and
// decide ℓ-semistability of the result.
TwistWorkflowReport twist_extend_untwist(const FamilyModel& family, const LineBundleData& twist_by,
                                         const Polarization& w, int max_steps = 64);

} // namespace lstab
