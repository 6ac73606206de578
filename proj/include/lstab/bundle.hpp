#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lstab/curve.hpp"
#include "lstab/rational.hpp"

namespace lstab {

// How the restrictions of the bundle are identified at the nodes. Generic and
// Aligned pin the achievable node overlaps of subsheaves; Unspecified leaves
// them open, so only bracket-level verdicts are available.
enum class Gluing { Generic, Aligned, Unspecified };

std::string_view to_string(Gluing gluing) noexcept;
Gluing parse_gluing(std::string_view text);

// Degrees of the line-bundle summands on a genus-0 component, descending.
using Splitting = std::vector<Int>;

struct BundleData {
    NodalCurve curve;
    int rank = 1;
    std::vector<Int> degrees;
    std::vector<std::optional<Splitting>> splittings;
    // Certificate mode: caller-declared maximal chi of saturated subsheaves of
    // rank 1..rank-1 on a component (used where no splitting is available).
    std::vector<std::optional<std::vector<Int>>> declared_max_chi;
    Gluing gluing = Gluing::Unspecified;

    bool operator==(const BundleData&) const = default;
};

// Validates and canonicalizes (splittings sorted descending). Empty
// `splittings` / `declared` vectors mean "none on any component".
BundleData make_bundle(NodalCurve curve, int rank, std::vector<Int> degrees,
                       std::vector<std::optional<Splitting>> splittings = {},
                       Gluing gluing = Gluing::Unspecified,
                       std::vector<std::optional<std::vector<Int>>> declared = {});

// Throws Error(Validation) describing the first violated invariant.
void validate(const BundleData& bundle);

// Every component rational with a splitting type, and no self-nodes.
bool in_decision_mode(const BundleData& bundle);

struct LineBundleData {
    std::vector<Int> degrees;

    Int total_degree() const;
    LineBundleData operator-() const;
    bool operator==(const LineBundleData&) const = default;
};

Int euler_characteristic(const BundleData& bundle);
// chi(E|_{Y_i}) = d_i + r(1 - g_i).
Int component_chi(const BundleData& bundle, std::size_t component);
Int total_degree(const BundleData& bundle);

BundleData restrict(const BundleData& bundle, const Subcurve& sub);

BundleData twist(const BundleData& bundle, const LineBundleData& line);

} // namespace lstab
