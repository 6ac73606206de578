#include "lstab/stability.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lstab/error.hpp"

namespace lstab {

std::string_view to_string(Status status) noexcept {
    switch (status) {
    case Status::CertifiedYes: return "CertifiedYes";
    case Status::CertifiedNo: return "CertifiedNo";
    case Status::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
    case Provenance::Verified: return "verified";
    case Provenance::Declared: return "declared";
    case Provenance::Failed: return "failed";
    case Provenance::Unknown: return "unknown";
    }
    return "unknown";
}

std::vector<std::vector<int>> proper_rank_vectors(std::size_t components, int rank) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(components, 0);
    while (true) {
        std::size_t i = components;
        while (i > 0 && v[i - 1] == rank)
            v[--i] = 0;
        if (i == 0)
            break;
        ++v[i - 1];
        if (std::any_of(v.begin(), v.end(), [&](int x) { return x != rank; }))
            out.push_back(v);
    }
    return out;
}

bool prefer_witness(const Rational& margin_a, std::span<const int> a, const Rational& margin_b,
                    std::span<const int> b) {
    if (margin_a != margin_b)
        return margin_a > margin_b;
    auto support = [](std::span<const int> v) {
        return std::count_if(v.begin(), v.end(), [](int x) { return x > 0; });
    };
    if (support(a) != support(b))
        return support(a) < support(b);
    const int total_a = std::accumulate(a.begin(), a.end(), 0);
    const int total_b = std::accumulate(b.begin(), b.end(), 0);
    if (total_a != total_b)
        return total_a > total_b;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void require_engine_input(const BundleData& bundle) {
    validate(bundle);
    if (bundle.curve.has_self_nodes())
        fail(ErrorKind::DecisionModeUnavailable, "curve has a self-node");
}

struct Candidate {
    std::vector<int> ranks;
    ChiBracket bracket;
    Rational threshold; // compared against chi(F) scaled as in `scale`
    Rational scale;     // chi(F) * scale vs threshold
};

std::string join_ranks(std::span<const int> ranks) {
    std::string out = "(";
    for (std::size_t i = 0; i < ranks.size(); ++i)
        out += (i ? "," : "") + std::to_string(ranks[i]);
    return out + ")";
}

// Violation test on a scaled value: chi*scale > threshold (semi) or >= (strict).
bool violates(Int chi, const Candidate& c, bool strict) {
    const Rational lhs = c.scale * chi;
    return strict ? lhs >= c.threshold : lhs > c.threshold;
}

Verdict decide(const BundleData& bundle, const std::vector<Candidate>& candidates,
               const Notion& notion) {
    const auto model = achievability_of(bundle.gluing);
    const bool strict = notion.strict();
    Verdict verdict;
    const Candidate* witness = nullptr;
    Rational witness_margin;
    bool straddle = false;

    for (const auto& c : candidates) {
        const Int guaranteed = model ? model_chi(bundle, c.ranks, *model) : c.bracket.lower;
        const Int potential = model ? guaranteed : c.bracket.upper;
        if (violates(guaranteed, c, strict)) {
            const Rational margin = c.scale * guaranteed - c.threshold;
            if (!witness || prefer_witness(margin, c.ranks, witness_margin, witness->ranks)) {
                witness = &c;
                witness_margin = margin;
            }
        } else if (violates(potential, c, strict)) {
            straddle = true;
            verdict.notes.push_back("rank " + join_ranks(c.ranks) + ": bracket [" +
                                    std::to_string(c.bracket.lower) + ", " +
                                    std::to_string(c.bracket.upper) + "] straddles the threshold");
        }
    }

    if (witness) {
        verdict.status = Status::CertifiedNo;
        const auto realization =
            maximal_realization(bundle, witness->ranks, model.value_or(Achievability::Generic));
        const Int chi = model ? model_chi(bundle, witness->ranks, *model) : witness->bracket.lower;
        verdict.witness = verify_destabilizer(bundle, realization, notion, chi);
        verdict.notes.clear();
        verdict.notes.push_back("witness rank " + join_ranks(witness->ranks) + " with chi " +
                                std::to_string(chi));
    } else if (straddle) {
        verdict.status = Status::Indeterminate;
    } else {
        verdict.status = Status::CertifiedYes;
    }
    if (model)
        verdict.notes.push_back(std::string("achievability model ") +
                                std::string(to_string(*model)));
    else
        verdict.notes.push_back("bracket-level verdict (gluing unspecified)");
    return verdict;
}

} // namespace

Int decisive_chi(const BundleData& bundle, std::span<const int> ranks) {
    if (const auto model = achievability_of(bundle.gluing))
        return model_chi(bundle, ranks, *model);
    return chi_bracket(bundle, ranks).lower;
}

Verdict decide_ell(const BundleData& bundle, bool strict) {
    require_engine_input(bundle);
    const Int chi_e = euler_characteristic(bundle);
    const auto n = bundle.curve.num_components();
    std::vector<Candidate> candidates;
    for (int sub_rank = 1; sub_rank < bundle.rank; ++sub_rank) {
        std::vector<int> ranks(n, sub_rank);
        const auto bracket = chi_bracket(bundle, ranks);
        // chi(F)/r' vs chi(E)/r, scaled by r r'.
        candidates.push_back({std::move(ranks), bracket, Rational(chi_e) * sub_rank,
                              Rational(bundle.rank)});
    }
    return decide(bundle, candidates, Notion::ell(strict));
}

Verdict decide_w(const BundleData& bundle, const Polarization& w, bool strict) {
    require_engine_input(bundle);
    if (w.size() != bundle.curve.num_components())
        fail(ErrorKind::InvalidPolarization, "polarization has " + std::to_string(w.size()) +
                                                 " weights for " +
                                                 std::to_string(bundle.curve.num_components()) +
                                                 " components");
    const Int chi_e = euler_characteristic(bundle);
    std::vector<Candidate> candidates;
    for (auto& ranks : proper_rank_vectors(bundle.curve.num_components(), bundle.rank)) {
        const auto bracket = chi_bracket(bundle, ranks);
        const Rational threshold = Rational(chi_e) * w.weighted_rank(ranks);
        candidates.push_back({std::move(ranks), bracket, threshold, Rational(bundle.rank)});
    }
    return decide(bundle, candidates, Notion::w(w, strict));
}

BlockStatus block_status(const BundleData& bundle, const Subcurve& sub) {
    const auto block = restrict(bundle, sub);
    BlockStatus status;
    status.labels = labels_of(bundle.curve, sub);
    const auto semi = decide_ell(block, false);
    switch (semi.status) {
    case Status::CertifiedYes: status.semistable = Provenance::Verified; break;
    case Status::CertifiedNo:
        status.semistable = Provenance::Failed;
        status.reason = semi.witness ? semi.witness->explanation : "not ℓ-semistable";
        break;
    case Status::Indeterminate:
        status.semistable = Provenance::Unknown;
        status.reason = "ℓ-semistability of the block is indeterminate";
        break;
    }
    const Int chi_block = euler_characteristic(block);
    const auto model = achievability_of(block.gluing);
    for (int sub_rank = 1; sub_rank < block.rank; ++sub_rank) {
        // Weakly destabilizing: chi(F) = r' chi(E|_Y) / r exactly.
        const Int scaled = Int{sub_rank} * chi_block;
        if (scaled % block.rank != 0)
            continue;
        const Int target = scaled / block.rank;
        std::vector<int> ranks(block.curve.num_components(), sub_rank);
        const auto bracket = chi_bracket(block, ranks);
        if (model) {
            if (model_chi(block, ranks, *model) == target) {
                status.weak_ranks.push_back(sub_rank);
                status.possible_weak_ranks.push_back(sub_rank);
            }
        } else {
            if (bracket.lower == target)
                status.weak_ranks.push_back(sub_rank);
            if (bracket.lower <= target && target <= bracket.upper)
                status.possible_weak_ranks.push_back(sub_rank);
        }
    }
    return status;
}

namespace {

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool usable(const BlockStatus& b) {
    return b.semistable == Provenance::Verified || b.semistable == Provenance::Declared;
}

std::string describe(const BlockStatus& b) {
    std::string out;
    for (std::size_t i = 0; i < b.labels.size(); ++i)
        out += (i ? "," : "") + b.labels[i];
    return "{" + out + "}";
}

} // namespace

BlockStatus glue_blocks(const BlockStatus& left, const BlockStatus& right, Gluing gluing) {
    BlockStatus out;
    out.labels = left.labels;
    out.labels.insert(out.labels.end(), right.labels.begin(), right.labels.end());
    if (!usable(left) || !usable(right)) {
        out.semistable = Provenance::Unknown;
        out.reason = "a glued block is not known to be ℓ-semistable";
        return out;
    }
    out.semistable = Provenance::Verified;
    switch (gluing) {
    case Gluing::Aligned:
        out.weak_ranks = intersect(left.weak_ranks, right.weak_ranks);
        out.possible_weak_ranks = out.weak_ranks;
        break;
    case Gluing::Generic:
        // Pairs never glue, so the union loses at the node.
        break;
    case Gluing::Unspecified:
        out.possible_weak_ranks = intersect(left.possible_weak_ranks, right.possible_weak_ranks);
        break;
    }
    return out;
}

Verdict compose_blocks(const BundleData& bundle, const BlockStatus& left, const BlockStatus& right,
                       std::size_t node, bool strict) {
    validate(bundle);
    for (const auto* b : {&left, &right})
        if (!usable(*b))
            fail(ErrorKind::PreconditionUnverified,
                 "block " + describe(*b) + " is not verified ℓ-semistable" +
                     (b->reason.empty() ? "" : " (" + b->reason + ")"));
    const auto split = split_at_node(bundle.curve, node);
    auto side_labels = [&](const Subcurve& s) {
        auto l = labels_of(bundle.curve, s);
        std::sort(l.begin(), l.end());
        return l;
    };
    auto sorted = [](std::vector<std::string> l) {
        std::sort(l.begin(), l.end());
        return l;
    };
    const auto first = side_labels(split.first);
    const auto second = side_labels(split.second);
    const auto l = sorted(left.labels);
    const auto r = sorted(right.labels);
    if (!((l == first && r == second) || (l == second && r == first)))
        fail(ErrorKind::Precondition, "blocks do not meet exactly at node " + std::to_string(node));

    Verdict verdict;
    verdict.notes.push_back("blocks " + describe(left) + " and " + describe(right) +
                            " are ℓ-semistable; the union is ℓ-semistable");
    if (!strict) {
        verdict.status = Status::CertifiedYes;
        return verdict;
    }
    const auto certain = intersect(left.weak_ranks, right.weak_ranks);
    const auto possible = intersect(left.possible_weak_ranks, right.possible_weak_ranks);
    if (possible.empty()) {
        verdict.status = Status::CertifiedYes;
        verdict.notes.push_back("no pair of weakly destabilizing subsheaves of equal rank");
        return verdict;
    }
    switch (bundle.gluing) {
    case Gluing::Generic:
        verdict.status = Status::CertifiedYes;
        verdict.notes.push_back("weakly destabilizing pairs exist but do not glue (generic)");
        break;
    case Gluing::Aligned: {
        if (certain.empty()) {
            verdict.status = Status::CertifiedYes;
            break;
        }
        const int sub_rank = certain.front();
        const Int scaled = Int{sub_rank} * euler_characteristic(bundle);
        const Int chi = scaled / bundle.rank;
        auto type = maximal_realization(
            bundle, std::vector<int>(bundle.curve.num_components(), sub_rank),
            Achievability::Aligned);
        verdict.status = Status::CertifiedNo;
        verdict.witness = verify_destabilizer(bundle, type, Notion::ell(true), chi);
        verdict.notes.push_back("weakly destabilizing rank-" + std::to_string(sub_rank) +
                                " subsheaves glue (aligned): strictly ℓ-semistable");
        break;
    }
    case Gluing::Unspecified:
        verdict.status = Status::Indeterminate;
        verdict.notes.push_back("weakly destabilizing pairs may glue (gluing unspecified)");
        break;
    }
    return verdict;
}

Verdict decide_compact_type(const BundleData& bundle, bool strict) {
    validate(bundle);
    if (!is_compact_type(bundle.curve))
        fail(ErrorKind::NotCompactType, "dual graph is not a tree");
    const auto n = bundle.curve.num_components();
    if (n == 1)
        return decide_ell(bundle, strict);

    std::vector<BlockStatus> blocks;
    for (std::size_t i = 0; i < n; ++i)
        blocks.push_back(block_status(bundle, make_subcurve(bundle.curve, std::vector<std::size_t>{i})));
    for (const auto& b : blocks) {
        if (!usable(b)) {
            Verdict v;
            v.status = Status::Indeterminate;
            v.notes.push_back("PreconditionUnverified: block " + describe(b) +
                              " is not ℓ-semistable" + (b.reason.empty() ? "" : " (" + b.reason + ")"));
            return v;
        }
    }

    // Attach components in breadth-first order from component 0.
    std::vector<std::size_t> attached{0};
    std::vector<bool> in(n, false);
    in[0] = true;
    BlockStatus acc = blocks[0];
    Verdict last;
    while (attached.size() < n) {
        for (std::size_t k = 0; k < bundle.curve.num_nodes(); ++k) {
            const auto& node = bundle.curve.node(k);
            if (in[node.a] == in[node.b])
                continue;
            const auto next = in[node.a] ? node.b : node.a;
            auto members = attached;
            members.push_back(next);
            const auto sub = make_subcurve(bundle.curve, members);
            const auto union_bundle = restrict(bundle, sub);
            const auto& left_label = bundle.curve.component(in[node.a] ? node.a : node.b).label;
            const auto& right_label = bundle.curve.component(next).label;
            std::size_t local = union_bundle.curve.num_nodes();
            for (std::size_t j = 0; j < union_bundle.curve.num_nodes(); ++j) {
                const auto& e = union_bundle.curve.node(j);
                const auto& la = union_bundle.curve.component(e.a).label;
                const auto& lb = union_bundle.curve.component(e.b).label;
                if ((la == left_label && lb == right_label) ||
                    (la == right_label && lb == left_label))
                    local = j;
            }
            last = compose_blocks(union_bundle, acc, blocks[next], local, strict);
            acc = glue_blocks(acc, blocks[next], bundle.gluing);
            attached.push_back(next);
            in[next] = true;
            break;
        }
    }
    if (last.witness) {
        // Re-anchor the witness on the whole curve.
        const int sub_rank = last.witness->type.ranks.front();
        auto type = maximal_realization(bundle, std::vector<int>(n, sub_rank),
                                        Achievability::Aligned);
        last.witness = verify_destabilizer(bundle, type, Notion::ell(true),
                                           last.witness->declared_chi);
    }
    return last;
}

namespace {

// Achievable maximal saturated degrees by choosing `k` summands: every k-subset sum.
Int best_subset_sum(const Splitting& split, int k) {
    const auto r = split.size();
    Int best = std::numeric_limits<Int>::min();
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        if (std::popcount(mask) != k)
            continue;
        Int sum = 0;
        for (std::size_t j = 0; j < r; ++j)
            if (mask & (1u << j))
                sum += split[j];
        best = std::max(best, sum);
    }
    return best;
}

} // namespace

OracleResult oracle_max_chi(const BundleData& bundle, std::span<const int> ranks,
                            Achievability model, const OracleOptions& options) {
    validate(bundle);
    if (!in_decision_mode(bundle))
        fail(ErrorKind::DecisionModeUnavailable,
             "the oracle needs rational components with splitting types and no self-nodes");
    const auto n = bundle.curve.num_components();
    auto probe = make_type(bundle, std::vector<int>(ranks.begin(), ranks.end()));

    // Per-component degree ranges [lo, hi] and per-node overlap ranges [0, hi].
    std::vector<Int> lo(n, 0), hi(n, 0);
    std::size_t total = 1;
    auto grow = [&](std::size_t choices) {
        if (choices != 0 && total > options.budget / choices)
            fail(ErrorKind::BudgetExceeded, "more than " + std::to_string(options.budget) +
                                                " realizations");
        total *= choices;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const int k = probe.ranks[i];
        if (k == 0)
            continue;
        const auto& split = *bundle.splittings[i];
        const Int floor = options.degree_floor.value_or(split.back() - bundle.rank);
        hi[i] = best_subset_sum(split, k);
        lo[i] = std::min(hi[i], floor * k);
        grow(static_cast<std::size_t>(hi[i] - lo[i] + 1));
    }
    std::vector<int> overlap_hi(bundle.curve.num_nodes(), 0);
    for (std::size_t k = 0; k < bundle.curve.num_nodes(); ++k) {
        const auto& node = bundle.curve.node(k);
        overlap_hi[k] = max_overlap(probe.ranks[node.a], probe.ranks[node.b], bundle.rank, model);
        grow(static_cast<std::size_t>(overlap_hi[k] + 1));
    }

    OracleResult result;
    result.model = model;
    Realization current{lo, std::vector<int>(bundle.curve.num_nodes(), 0), 0};
    bool first = true;
    // Odometer over all degree and overlap choices.
    while (true) {
        Int chi = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (probe.ranks[i] > 0)
                chi += current.degrees[i] + probe.ranks[i];
        for (std::size_t k = 0; k < bundle.curve.num_nodes(); ++k) {
            const auto& node = bundle.curve.node(k);
            chi -= probe.ranks[node.a] + probe.ranks[node.b] - current.overlaps[k];
        }
        ++result.enumerated;
        if (first || chi > result.max_chi) {
            result.max_chi = chi;
            result.realizations.clear();
            first = false;
        }
        if (chi == result.max_chi && result.realizations.size() < options.max_listed) {
            current.chi = chi;
            result.realizations.push_back(current);
        }

        std::size_t pos = 0;
        for (; pos < n + bundle.curve.num_nodes(); ++pos) {
            if (pos < n) {
                if (probe.ranks[pos] == 0)
                    continue;
                if (current.degrees[pos] < hi[pos]) {
                    ++current.degrees[pos];
                    break;
                }
                current.degrees[pos] = lo[pos];
            } else {
                const auto k = pos - n;
                if (current.overlaps[k] < overlap_hi[k]) {
                    ++current.overlaps[k];
                    break;
                }
                current.overlaps[k] = 0;
            }
        }
        if (pos == n + bundle.curve.num_nodes())
            break;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (probe.ranks[i] == 0)
            for (auto& r : result.realizations)
                r.degrees[i] = 0;
    std::sort(result.realizations.begin(), result.realizations.end(),
              [](const Realization& a, const Realization& b) {
                  return std::tie(a.degrees, a.overlaps) < std::tie(b.degrees, b.overlaps);
              });
    return result;
}

} // namespace lstab
