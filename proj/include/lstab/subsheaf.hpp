#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lstab/bundle.hpp"
#include "lstab/polarization.hpp"

namespace lstab {

/// Numerical type of a torsion-free subsheaf F of a bundle E.
///
/// `ranks[i]` is the generic rank on component i. `degrees[i]` and
/// `overlaps[k]` describe one realization: the degree of the saturation of F
/// on component i (0 where the rank is 0) and the overlap r_P at node k,
/// i.e. the dimension by which the two branch fibres of F agree at P.
struct SubsheafType {
    std::vector<int> ranks;
    std::vector<Int> degrees;
    std::vector<int> overlaps;

    bool operator==(const SubsheafType&) const = default;
};

// Rank-only type with zero degrees and overlaps.
SubsheafType make_type(const BundleData& bundle, std::vector<int> ranks);
void validate_type(const BundleData& bundle, const SubsheafType& type);
bool is_ell_admissible(const SubsheafType& type) noexcept;

// Range of the maximal chi over subsheaves of one rank vector.
struct ChiBracket {
    Int lower = 0; // attained by a subsheaf that always exists
    Int upper = 0; // no subsheaf of the type exceeds it

    bool operator==(const ChiBracket&) const = default;
};

// Which node overlaps are realizable. Generic: the branch fibres meet only in
// the forced dimension max(0, r_a + r_b - r). Aligned: they meet in min(r_a, r_b).
enum class Achievability { Generic, Aligned };

std::string_view to_string(Achievability model) noexcept;
int max_overlap(int rank_a, int rank_b, int rank, Achievability model) noexcept;
// Generic -> Generic, Aligned -> Aligned, Unspecified -> nullopt.
std::optional<Achievability> achievability_of(Gluing gluing) noexcept;

// Largest chi of a saturated rank-k subsheaf of a split bundle on a rational
// component: top k splitting entries plus k.
Int max_chi_saturated(const BundleData& bundle, std::size_t component, int sub_rank);

// max_chi_saturated where available; chi(E|_Y) at full rank; otherwise the
// declared maximum. Throws DecisionModeUnavailable when none applies.
Int component_max_chi(const BundleData& bundle, std::size_t component, int sub_rank);

ChiBracket chi_bracket(const BundleData& bundle, std::span<const int> ranks);
ChiBracket chi_bracket(const BundleData& bundle, const SubsheafType& type);

// Maximal chi for the rank vector under an achievability model; equals the
// bracket's lower end for Generic and its upper end for Aligned.
Int model_chi(const BundleData& bundle, std::span<const int> ranks, Achievability model);

// Maximizing realization of the rank vector under a model (degrees = top
// entries, overlaps = model maxima).
SubsheafType maximal_realization(const BundleData& bundle, std::vector<int> ranks,
                                 Achievability model);

// chi of an explicit realization:
// sum_{r_i>0} (e_i + r_i(1-g_i)) - sum_P (r_a + r_b - r_P).
Int realization_chi(const BundleData& bundle, const SubsheafType& type);

enum class NotionKind { EllSemistable, EllStable, WSemistable, WStable };

struct Notion {
    NotionKind kind = NotionKind::EllSemistable;
    std::optional<Polarization> polarization;

    static Notion ell(bool strict);
    static Notion w(Polarization polarization, bool strict);

    bool strict() const noexcept;
    bool is_ell() const noexcept;
    std::string name() const; // e.g. "ℓ-stable", "w-semistable"

    bool operator==(const Notion&) const = default;
};

struct Certificate {
    SubsheafType type;
    Notion notion;
    Int declared_chi = 0;
    // ℓ: lhs = chi(F)/r', rhs = chi(E)/r. w: lhs = chi(F) r, rhs = chi(E) sum w_i r_i.
    Rational lhs;
    Rational rhs;
    bool violated = false;
    std::string relation;   // relation that holds between lhs and rhs
    std::string provenance; // "splitting types" or which declared maxima were used
    std::string explanation;
};

// Checks whether a subsheaf of the given type with chi = declared_chi violates
// the notion's inequality. Throws InadmissibleType and ImplausibleChi.
Certificate verify_destabilizer(const BundleData& bundle, const SubsheafType& type,
                                const Notion& notion, Int declared_chi);

} // namespace lstab
