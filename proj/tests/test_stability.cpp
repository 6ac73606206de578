#include <random>

#include "helpers.hpp"
#include "lstab/stability.hpp"
#include "oracles.hpp"

using namespace lstab;

namespace {

BundleData three_chain(Gluing g = Gluing::Generic) {
    return oracle::rational_chain({{0, 0}, {-1, -1}, {0, 0}}, g);
}

BundleData single(Splitting s) { return oracle::rational_chain({s}, Gluing::Generic); }

Polarization pol(std::initializer_list<Rational> w) { return Polarization(std::vector<Rational>(w)); }

BundleData random_chain(std::mt19937_64& rng, Gluing gluing, int max_n = 4, int max_r = 3) {
    std::uniform_int_distribution<int> count(1, max_n), rank(1, max_r), entry(-4, 4);
    const int n = count(rng), r = rank(rng);
    std::vector<std::vector<Int>> splits(n);
    for (auto& s : splits) {
        for (int j = 0; j < r; ++j)
            s.push_back(entry(rng));
        std::sort(s.rbegin(), s.rend());
    }
    return oracle::rational_chain(splits, gluing);
}

Polarization random_polarization(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> weight(1, 9);
    std::vector<Rational> w;
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        w.push_back(weight(rng));
        sum += w.back();
    }
    for (auto& x : w)
        x /= sum;
    return Polarization(w);
}

oracle::Answer answer(Status s) {
    REQUIRE(s != Status::Indeterminate);
    return s == Status::CertifiedYes ? oracle::Answer::Yes : oracle::Answer::No;
}

} // namespace

TEST_CASE("rank vectors and witness preference") {
    const auto v = proper_rank_vectors(2, 1);
    CHECK(v == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(proper_rank_vectors(3, 2).size() == 25);
    const std::vector<int> a{2, 0, 0}, b{1, 1, 1};
    CHECK(prefer_witness(1, b, 0, a));
    CHECK(prefer_witness(0, a, 0, b)); // smaller support wins on ties
}

TEST_CASE("ℓ-stability on single components") {
    const auto v = decide_ell(single({3, 1}), false);
    CHECK(v.status == Status::CertifiedNo);
    REQUIRE(v.witness);
    CHECK(v.witness->type.ranks == std::vector<int>{1});
    CHECK(v.witness->declared_chi == 4);
    CHECK(v.witness->lhs == 4);
    CHECK(v.witness->rhs == 3);
    for (Int a = -3; a <= 3; ++a) {
        CHECK(decide_ell(single({a, a}), false).status == Status::CertifiedYes);
        const auto s = decide_ell(single({a, a}), true);
        CHECK(s.status == Status::CertifiedNo);
        REQUIRE(s.witness);
        CHECK(s.witness->declared_chi == a + 1);
    }
}

TEST_CASE("three-component chain verdicts") {
    const auto e = three_chain();
    CHECK(decide_ell(e, true).status == Status::CertifiedYes);
    CHECK(decide_ell(e, false).status == Status::CertifiedYes);
    for (const auto& w : {Polarization::uniform(3), pol({Rational(1, 2), Rational(1, 4), Rational(1, 4)}),
                          pol({Rational(1, 10), Rational(1, 10), Rational(8, 10)})}) {
        const auto v = decide_w(e, w, true);
        CHECK(v.status == Status::CertifiedNo);
        REQUIRE(v.witness);
        CHECK(v.witness->type.ranks == std::vector<int>{2, 0, 0});
        CHECK(v.witness->declared_chi == 0);
        CHECK(decide_w(e, w, false).status == Status::CertifiedYes);
    }
    // Under aligned gluing the matching line subbundles attain equality.
    const auto aligned = decide_ell(three_chain(Gluing::Aligned), true);
    CHECK(aligned.status == Status::CertifiedNo);
    REQUIRE(aligned.witness);
    CHECK(aligned.witness->type.ranks == std::vector<int>{1, 1, 1});
    // Unspecified gluing: the bracket [-2, 0] straddles the threshold 0.
    CHECK(decide_ell(three_chain(Gluing::Unspecified), true).status == Status::Indeterminate);
    CHECK(decide_ell(three_chain(Gluing::Unspecified), false).status == Status::CertifiedYes);
}

TEST_CASE("balanced two-component chain under a symmetric polarization") {
    const auto half = pol({Rational(1, 2), Rational(1, 2)});
    const auto aligned = oracle::rational_chain({{0, 0}, {0, 0}}, Gluing::Aligned);
    CHECK(decide_w(aligned, half, false).status == Status::CertifiedYes);
    const auto v = decide_w(aligned, half, true);
    CHECK(v.status == Status::CertifiedNo);
    REQUIRE(v.witness);
    CHECK(v.witness->type.ranks == std::vector<int>{1, 1});
    // Generic gluing: the line subbundles never meet at the node.
    const auto generic = oracle::rational_chain({{0, 0}, {0, 0}}, Gluing::Generic);
    CHECK(decide_w(generic, half, true).status == Status::CertifiedYes);
}

TEST_CASE("rank one bundles") {
    CHECK(decide_w(single({5}), Polarization::uniform(1), true).status == Status::CertifiedYes);
    CHECK(decide_ell(single({5}), true).status == Status::CertifiedYes);
    const auto line = oracle::rational_chain({{0}, {0}, {0}}, Gluing::Generic);
    CHECK(decide_w(line, Polarization::uniform(3), true).status == Status::CertifiedYes);
}

TEST_CASE("engine input checks") {
    const auto self = make_bundle(NodalCurve({{"A", 0}}, {{0, 0}}), 2, {0}, {Splitting{0, 0}},
                                  Gluing::Generic);
    CHECK_ERROR_KIND(decide_ell(self, false), ErrorKind::DecisionModeUnavailable);
    const auto genus = make_bundle(NodalCurve({{"A", 1}}, {}), 2, {0});
    CHECK_ERROR_KIND(decide_ell(genus, false), ErrorKind::DecisionModeUnavailable);
    CHECK_ERROR_KIND(decide_w(three_chain(), Polarization::uniform(2), false),
                     ErrorKind::InvalidPolarization);
}

TEST_CASE("block composition") {
    for (auto gluing : {Gluing::Generic, Gluing::Aligned, Gluing::Unspecified}) {
        const auto e = three_chain(gluing);
        const auto split = split_at_node(e.curve, 0);
        const auto left = block_status(e, split.first);
        const auto right = block_status(e, split.second);
        CHECK(left.semistable == Provenance::Verified);
        CHECK(right.semistable == Provenance::Verified);
        CHECK(compose_blocks(e, left, right, 0, false).status == Status::CertifiedYes);
        const auto stable = compose_blocks(e, left, right, 0, true).status;
        if (gluing == Gluing::Generic)
            CHECK(stable == Status::CertifiedYes);
        else if (gluing == Gluing::Aligned)
            CHECK(stable == Status::CertifiedNo);
        else
            CHECK(stable == Status::Indeterminate);
    }

    // A block with no weakly destabilizing ranks forces stability.
    const auto e = three_chain(Gluing::Generic);
    const auto left = block_status(e, make_subcurve(e.curve, std::vector<std::size_t>{0}));
    const auto right = block_status(e, make_subcurve(e.curve, std::vector<std::size_t>{1, 2}));
    CHECK(left.weak_ranks == std::vector<int>{1});
    CHECK(right.weak_ranks.empty());
    CHECK(compose_blocks(e, left, right, 0, true).status == Status::CertifiedYes);

    auto unknown = left;
    unknown.semistable = Provenance::Unknown;
    CHECK_ERROR_KIND(compose_blocks(e, unknown, right, 0, true), ErrorKind::PreconditionUnverified);
    auto declared = left;
    declared.semistable = Provenance::Declared;
    CHECK(compose_blocks(e, declared, right, 0, false).status == Status::CertifiedYes);
}

TEST_CASE("compact type folding") {
    for (bool strict : {false, true})
        CHECK(decide_compact_type(three_chain(), strict).status == decide_ell(three_chain(), strict).status);

    const auto unstable = oracle::rational_chain({{3, -3}, {0, 0}}, Gluing::Generic);
    const auto v = decide_compact_type(unstable, false);
    CHECK(v.status == Status::Indeterminate);
    REQUIRE_FALSE(v.notes.empty());
    CHECK(v.notes.front().find("PreconditionUnverified") != std::string::npos);

    const auto star = make_bundle(
        NodalCurve({{"C", 0}, {"L1", 0}, {"L2", 0}, {"L3", 0}}, {{0, 1}, {0, 2}, {0, 3}}), 2,
        {0, 0, 0, 0}, {Splitting{0, 0}, Splitting{0, 0}, Splitting{0, 0}, Splitting{0, 0}},
        Gluing::Generic);
    CHECK(decide_compact_type(star, true).status == Status::CertifiedYes);
    CHECK(oracle::ell_by_subsets(star, false, true) == oracle::Answer::Yes);

    const auto cycle = make_bundle(NodalCurve({{"A", 0}, {"B", 0}}, {{0, 1}, {0, 1}}), 1, {0, 0},
                                   {Splitting{0}, Splitting{0}}, Gluing::Generic);
    CHECK_ERROR_KIND(decide_compact_type(cycle, false), ErrorKind::NotCompactType);
}

TEST_CASE("oracle enumeration") {
    const std::vector<int> ones{1, 1, 1};
    CHECK(oracle_max_chi(three_chain(), ones, Achievability::Aligned).max_chi == 0);
    CHECK(oracle_max_chi(three_chain(), ones, Achievability::Generic).max_chi == -2);
    const auto r = oracle_max_chi(single({3, 1}), std::vector<int>{1}, Achievability::Generic);
    CHECK(r.max_chi == 4);
    REQUIRE_FALSE(r.realizations.empty());
    CHECK(r.realizations.front().degrees == std::vector<Int>{3});
    OracleOptions tiny;
    tiny.budget = 3;
    CHECK_ERROR_KIND(oracle_max_chi(three_chain(), ones, Achievability::Aligned, tiny),
                     ErrorKind::BudgetExceeded);
}

TEST_CASE("property: soundness against independent oracles") {
    std::mt19937_64 rng(testing::seed_for("stability"));
    for (int trial = 0; trial < 400; ++trial) {
        const auto gluing = std::array{Gluing::Generic, Gluing::Aligned, Gluing::Unspecified}[trial % 3];
        const auto e = random_chain(rng, gluing);
        const auto w = random_polarization(rng, e.curve.num_components());
        for (bool strict : {false, true}) {
            const auto ell = decide_ell(e, strict);
            const auto pw = decide_w(e, w, strict);
            for (const auto* v : {&ell, &pw}) {
                if (v->status == Status::CertifiedNo) {
                    REQUIRE(v->witness);
                    const auto& c = *v->witness;
                    CHECK(verify_destabilizer(e, c.type, c.notion, c.declared_chi).violated);
                }
            }
            // Oracle model follows the gluing; unspecified gluing answers for both.
            std::vector<bool> models;
            if (gluing != Gluing::Generic)
                models.push_back(true);
            if (gluing != Gluing::Aligned)
                models.push_back(false);
            for (bool aligned : models) {
                if (ell.status != Status::Indeterminate &&
                    (gluing != Gluing::Unspecified || ell.status == Status::CertifiedYes ||
                     !aligned))
                    CHECK(answer(ell.status) == oracle::ell_by_subsets(e, aligned, strict));
                if (pw.status != Status::Indeterminate &&
                    (gluing != Gluing::Unspecified || pw.status == Status::CertifiedYes ||
                     !aligned))
                    CHECK(answer(pw.status) == oracle::w_by_subsets(e, w.weights(), aligned, strict));
            }
            if (gluing != Gluing::Unspecified) {
                CHECK(ell.status != Status::Indeterminate);
                CHECK(pw.status != Status::Indeterminate);
            }
        }
        // Monotonicity and the polarized-to-ℓ implication.
        if (decide_ell(e, true).status == Status::CertifiedYes)
            CHECK(decide_ell(e, false).status == Status::CertifiedYes);
        for (bool strict : {false, true})
            if (decide_w(e, w, strict).status == Status::CertifiedYes)
                CHECK(decide_ell(e, strict).status != Status::CertifiedNo);
    }
}

TEST_CASE("property: twist invariance of ℓ verdicts") {
    std::mt19937_64 rng(testing::seed_for("twist"));
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const auto gluing = std::array{Gluing::Generic, Gluing::Aligned, Gluing::Unspecified}[trial % 3];
        const auto e = random_chain(rng, gluing);
        LineBundleData l;
        for (std::size_t i = 0; i < e.curve.num_components(); ++i)
            l.degrees.push_back(entry(rng));
        const auto t = twist(e, l);
        for (bool strict : {false, true}) {
            const auto a = decide_ell(e, strict), b = decide_ell(t, strict);
            CHECK(a.status == b.status);
            CHECK(a.witness.has_value() == b.witness.has_value());
            if (a.witness && b.witness)
                CHECK(a.witness->type.ranks == b.witness->type.ranks);
        }
    }
}
