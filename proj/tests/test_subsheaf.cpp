#include <random>

#include "helpers.hpp"
#include "lstab/subsheaf.hpp"
#include "oracles.hpp"

using namespace lstab;

namespace {

BundleData three_chain(Gluing g = Gluing::Generic) {
    return oracle::rational_chain({{0, 0}, {-1, -1}, {0, 0}}, g);
}

BundleData single(Splitting s) {
    return oracle::rational_chain({s}, Gluing::Generic);
}

// Brute force over line subbundles O(b) -> O(3) + O(1): a nonzero map
// exists iff b <= 3, and chi(O(b)) = b + 1.
Int brute_line_subbundle_chi(const Splitting& s) {
    Int best = -1000;
    for (Int b = -20; b <= 20; ++b) {
        const bool maps = std::any_of(s.begin(), s.end(), [&](Int a) { return b <= a; });
        if (maps)
            best = std::max(best, b + 1);
    }
    return best;
}

} // namespace

TEST_CASE("max chi of saturated subsheaves on a rational component") {
    const auto b = single({3, 1});
    CHECK(max_chi_saturated(b, 0, 1) == 4);
    CHECK(max_chi_saturated(b, 0, 1) == brute_line_subbundle_chi({3, 1}));
    CHECK(max_chi_saturated(b, 0, 2) == 6);
    CHECK(max_chi_saturated(b, 0, 2) == euler_characteristic(b));
    for (Int a = -3; a <= 3; ++a)
        CHECK(max_chi_saturated(single({a, a}), 0, 1) == a + 1);

    const auto elliptic = make_bundle(NodalCurve({{"E", 1}}, {}), 2, {0});
    CHECK_ERROR_KIND(max_chi_saturated(elliptic, 0, 1), ErrorKind::DecisionModeUnavailable);
    CHECK_ERROR_KIND(component_max_chi(elliptic, 0, 1), ErrorKind::DecisionModeUnavailable);
    CHECK(component_max_chi(elliptic, 0, 2) == 0);
    const auto declared = make_bundle(NodalCurve({{"E", 1}}, {}), 2, {0}, {}, Gluing::Generic,
                                      {std::vector<Int>{-1}});
    CHECK(component_max_chi(declared, 0, 1) == -1);
}

TEST_CASE("brackets on the three-component chain") {
    const auto e = three_chain();
    CHECK(chi_bracket(e, std::vector<int>{2, 0, 0}) == ChiBracket{0, 0});
    CHECK(chi_bracket(e, std::vector<int>{0, 2, 2}).upper == -2);
    CHECK(chi_bracket(e, std::vector<int>{1, 1, 1}) == ChiBracket{-2, 0});
    CHECK(model_chi(e, std::vector<int>{1, 1, 1}, Achievability::Aligned) == 0);
    CHECK(model_chi(e, std::vector<int>{1, 1, 1}, Achievability::Generic) == -2);
}

TEST_CASE("type validation") {
    const auto e = three_chain();
    CHECK_ERROR_KIND(make_type(e, {0, 0, 0}), ErrorKind::Validation);
    CHECK_ERROR_KIND(make_type(e, {2, 2, 2}), ErrorKind::Validation);
    CHECK_ERROR_KIND(make_type(e, {3, 0, 0}), ErrorKind::Validation);
    CHECK_ERROR_KIND(make_type(e, {1, 1}), ErrorKind::Validation);
    auto t = make_type(e, {1, 1, 0});
    t.overlaps = {2, 0};
    CHECK_ERROR_KIND(validate_type(e, t), ErrorKind::Validation);
    CHECK(is_ell_admissible(make_type(e, {1, 1, 1})));
    CHECK_FALSE(is_ell_admissible(make_type(e, {2, 0, 0})));
}

TEST_CASE("destabilizer certificates") {
    const auto e = three_chain();
    const auto t200 = make_type(e, {2, 0, 0});
    for (const auto& w : {Polarization::uniform(3),
                          Polarization({Rational(1, 2), Rational(1, 4), Rational(1, 4)})}) {
        const auto c = verify_destabilizer(e, t200, Notion::w(w, true), 0);
        CHECK(c.violated);
        CHECK(c.lhs == 0);
        CHECK(c.rhs == 0);
        CHECK_FALSE(verify_destabilizer(e, t200, Notion::w(w, false), 0).violated);
    }

    const auto b31 = single({3, 1});
    const auto c = verify_destabilizer(b31, make_type(b31, {1}), Notion::ell(false), 4);
    CHECK(c.violated);
    CHECK(c.lhs == 4);
    CHECK(c.rhs == 3);

    for (Int a = -2; a <= 2; ++a) {
        const auto bal = single({a, a});
        const auto eq = verify_destabilizer(bal, make_type(bal, {1}), Notion::ell(false), a + 1);
        CHECK_FALSE(eq.violated);
        CHECK(verify_destabilizer(bal, make_type(bal, {1}), Notion::ell(true), a + 1).violated);
    }

    CHECK_ERROR_KIND(verify_destabilizer(e, t200, Notion::ell(false), 0), ErrorKind::InadmissibleType);
    CHECK_ERROR_KIND(verify_destabilizer(e, t200, Notion::w(Polarization::uniform(3), false), 1),
                     ErrorKind::ImplausibleChi);
}

TEST_CASE("realization chi matches the node-penalty formula") {
    const auto e = three_chain(Gluing::Aligned);
    const auto real = maximal_realization(e, {1, 1, 1}, Achievability::Aligned);
    CHECK(real.overlaps == std::vector<int>{1, 1});
    CHECK(realization_chi(e, real) == 0);
    const auto gen = maximal_realization(e, {1, 1, 1}, Achievability::Generic);
    CHECK(realization_chi(e, gen) == -2);
}

TEST_CASE("property: brackets agree with subset oracles and twist covariantly") {
    std::mt19937_64 rng(testing::seed_for("subsheaf"));
    std::uniform_int_distribution<int> count(1, 4), rank(1, 3), entry(-4, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = count(rng), r = rank(rng);
        std::vector<std::vector<Int>> splits(n);
        for (auto& s : splits) {
            for (int j = 0; j < r; ++j)
                s.push_back(entry(rng));
            std::sort(s.rbegin(), s.rend());
        }
        const auto e = oracle::rational_chain(splits, Gluing::Unspecified);
        LineBundleData l;
        for (int i = 0; i < n; ++i)
            l.degrees.push_back(entry(rng));
        const auto t = twist(e, l);
        for (const auto& ranks : oracle::all_proper_rank_vectors(n, r)) {
            const auto br = chi_bracket(e, ranks);
            CHECK(br.lower <= br.upper);
            CHECK(br.lower == oracle::max_chi_by_subsets(e, ranks, false));
            CHECK(br.upper == oracle::max_chi_by_subsets(e, ranks, true));
            bool no_shared = true;
            for (const auto& node : e.curve.nodes())
                no_shared = no_shared && std::min(ranks[node.a], ranks[node.b]) == 0;
            if (no_shared)
                CHECK(br.lower == br.upper);
            Int shift = 0;
            for (int i = 0; i < n; ++i)
                shift += ranks[i] * l.degrees[i];
            const auto bt = chi_bracket(t, ranks);
            CHECK(bt.lower == br.lower + shift);
            CHECK(bt.upper == br.upper + shift);
        }
    }
}
