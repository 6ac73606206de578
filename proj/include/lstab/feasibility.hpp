#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lstab/bundle.hpp"
#include "lstab/polarization.hpp"

namespace lstab {

enum class Side { Guaranteed, Potential };

std::string_view to_string(Side side) noexcept;

// chi(E) sum_i w_i r_i  {>, >=}  chi_cand * r, written as
// sum_i coeffs[i] w_i {>, >=} bound. `strict` means the system asks for
// stability, i.e. the constraint itself is a strict inequality.
struct LinearConstraint {
    std::vector<int> ranks;
    std::vector<Int> coeffs;
    Int bound = 0;
    bool strict = false;

    // Homogeneous form on the simplex: sum_i (coeffs[i] - bound) w_i.
    std::vector<Int> homogeneous() const;
    std::string to_string() const;
    bool operator==(const LinearConstraint&) const = default;
};

struct FeasibilitySystem {
    std::size_t num_vars = 0;
    std::vector<LinearConstraint> constraints; // plus w_i > 0, sum w_i = 1
    Side side = Side::Potential;
    bool strict = false;
};

/// One constraint per nonzero proper rank vector. `Guaranteed` uses chi values
/// that certainly occur (bracket lower end, or the model value under a
/// resolved gluing); `Potential` uses values that may occur (upper end, or
/// the model value). Constraints implied by w > 0 are dropped, and of
/// constraints with proportional homogeneous parts only the strongest kept.
FeasibilitySystem build_system(const BundleData& bundle, bool strict, Side side);

// Nonnegative combination of constraints whose homogeneous parts sum to a
// vector v <= 0 with either v != 0 or a strict constraint used: no w > 0
// satisfies all of them.
struct InfeasibilityCertificate {
    std::vector<std::pair<std::size_t, Int>> multipliers; // (constraint index, weight)
    std::vector<Int> combination;
    bool uses_strict = false;
    std::string summary;
};

bool verify_certificate(const FeasibilitySystem& system, const InfeasibilityCertificate& cert);

struct SolveResult {
    bool feasible = false;
    std::optional<Polarization> witness;
    std::optional<InfeasibilityCertificate> certificate;
};

// Exact Fourier-Motzkin elimination on the homogeneous system with w > 0;
// witnesses are rebuilt by back-substitution and normalized to sum 1.
SolveResult solve_system(const FeasibilitySystem& system);

// Multiplies every constraint by a positive integer; used to check that
// outcomes do not depend on the scale of the constraints.
FeasibilitySystem scaled(const FeasibilitySystem& system, Int factor);

enum class PolarizationOutcome { Feasible, Infeasible, Indeterminate };

std::string_view to_string(PolarizationOutcome outcome) noexcept;

struct PolarizationResult {
    PolarizationOutcome outcome = PolarizationOutcome::Indeterminate;
    std::optional<Polarization> witness;
    std::optional<InfeasibilityCertificate> certificate;
    FeasibilitySystem guaranteed;
    FeasibilitySystem potential;
    std::vector<std::string> notes;
};

// Is there a polarization w making the bundle w-(semi)stable?
PolarizationResult exists_polarization(const BundleData& bundle, bool strict);

} // namespace lstab
