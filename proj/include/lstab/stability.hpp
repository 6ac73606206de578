#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lstab/subsheaf.hpp"

namespace lstab {

enum class Status { CertifiedYes, CertifiedNo, Indeterminate };

std::string_view to_string(Status status) noexcept;

struct Verdict {
    Status status = Status::Indeterminate;
    std::optional<Certificate> witness; // always present for CertifiedNo
    std::vector<std::string> notes;
};

// All nonzero proper rank vectors in {0..r}^n, lexicographic order.
std::vector<std::vector<int>> proper_rank_vectors(std::size_t components, int rank);

// Ordering used to pick one witness among several violating rank vectors:
// larger violation margin first, then smaller support, then larger total
// rank, then lexicographically larger. Returns true if `a` is preferred.
bool prefer_witness(const Rational& margin_a, std::span<const int> a, const Rational& margin_b,
                    std::span<const int> b);

/// ℓ-(semi)stability: inequality for constant-rank subsheaves only.
///
/// For each r' in 1..r-1 the bracket of (r',...,r') is compared with
/// r' chi(E)/r in exact arithmetic. Under Generic/Aligned gluing the maximal
/// chi is the model value (bracket lower/upper end), so the verdict is always
/// certified; under Unspecified gluing a straddling bracket gives Indeterminate.
Verdict decide_ell(const BundleData& bundle, bool strict);

// Polarized (semi)stability: every nonzero proper rank vector, threshold
// chi(E) sum_i w_i r_i / r.
Verdict decide_w(const BundleData& bundle, const Polarization& w, bool strict);

// Value of chi used for a rank vector when deciding: the model value for
// Generic/Aligned gluing, the guaranteed (lower) end for Unspecified.
Int decisive_chi(const BundleData& bundle, std::span<const int> ranks);

enum class Provenance { Verified, Declared, Failed, Unknown };

std::string_view to_string(Provenance p) noexcept;

/// ℓ-semistability data of one block (a subcurve) for gluing.
///
/// `weak_ranks` lists the r' for which a constant-rank subsheaf of the block
/// attains chi(F)/r' = chi(E|_Y)/r under the gluing model; `possible_weak_ranks`
/// those where equality cannot be excluded (a superset).
struct BlockStatus {
    std::vector<std::string> labels;
    Provenance semistable = Provenance::Unknown;
    std::vector<int> weak_ranks;
    std::vector<int> possible_weak_ranks;
    std::string reason;
};

BlockStatus block_status(const BundleData& bundle, const Subcurve& sub);

// Status of the union of two blocks meeting at one node.
BlockStatus glue_blocks(const BlockStatus& left, const BlockStatus& right, Gluing gluing);

/// Composition across a single separating node. `bundle` lives on the union
/// of the two blocks and `node` indexes its curve. Throws
/// PreconditionUnverified when a block is neither verified nor declared
/// ℓ-semistable.
Verdict compose_blocks(const BundleData& bundle, const BlockStatus& left, const BlockStatus& right,
                       std::size_t node, bool strict);

// Folds compose_blocks over a leaf-attachment order of the tree. Throws
// NotCompactType. Unstable blocks give Indeterminate with the reason.
Verdict decide_compact_type(const BundleData& bundle, bool strict);

struct Realization {
    std::vector<Int> degrees;
    std::vector<int> overlaps;
    Int chi = 0;

    bool operator==(const Realization&) const = default;
};

struct OracleOptions {
    // Per-summand degree floor; default per component: min splitting entry - r.
    std::optional<Int> degree_floor;
    std::size_t budget = 5'000'000;
    std::size_t max_listed = 16;
};

struct OracleResult {
    Int max_chi = 0;
    std::vector<Realization> realizations; // maximizers, smallest first
    std::size_t enumerated = 0;
    Achievability model = Achievability::Generic;
};

// Exhaustive enumeration of numerical realizations of a rank vector: per
// component a saturated degree (bounded by some choice of summands of the
// splitting) and per node an overlap up to the model's maximum.
OracleResult oracle_max_chi(const BundleData& bundle, std::span<const int> ranks,
                            Achievability model, const OracleOptions& options = {});

} // namespace lstab
