// Independent reference computations for tests. Nothing here calls the
// engine's decision code; only the plain data structures are shared.
#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "lstab/bundle.hpp"
#include "lstab/polarization.hpp"

namespace oracle {

using lstab::BundleData;
using lstab::Int;
using lstab::Rational;

// Riemann-Roch on the whole curve: chi = deg + r (1 - p_a), with the
// arithmetic genus from the first Betti number of the dual graph.
inline Int chi_riemann_roch(const BundleData& b) {
    const auto& c = b.curve;
    Int genus_sum = 0;
    for (const auto& comp : c.components())
        genus_sum += comp.genus;
    // Betti number via union-find: edges that close a cycle.
    std::vector<std::size_t> parent(c.num_components());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    Int loops = 0;
    for (const auto& n : c.nodes()) {
        auto a = root(n.a), bb = root(n.b);
        if (a == bb)
            ++loops;
        else
            parent[a] = bb;
    }
    const Int pa = genus_sum + loops;
    Int deg = 0;
    for (auto d : b.degrees)
        deg += d;
    return deg + b.rank * (1 - pa);
}

// Largest chi over subsheaves spanned, on each rational component, by a
// subset of the splitting summands. At a node the two branch subspaces meet
// in |S_a ∩ S_b| dimensions when the gluing matches summands in order
// (aligned), and in the forced dimension max(0, r_a + r_b - r) when it is in
// general position (generic).
inline Int max_chi_by_subsets(const BundleData& b, const std::vector<int>& ranks, bool aligned) {
    const auto n = b.curve.num_components();
    const int r = b.rank;
    std::vector<std::vector<unsigned>> choices(n);
    for (std::size_t i = 0; i < n; ++i)
        for (unsigned mask = 0; mask < (1u << r); ++mask)
            if (std::popcount(mask) == ranks[i])
                choices[i].push_back(mask);
    std::optional<Int> best;
    std::vector<unsigned> pick(n);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == n) {
            Int chi = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (ranks[j] == 0)
                    continue;
                for (int s = 0; s < r; ++s)
                    if (pick[j] >> s & 1u)
                        chi += (*b.splittings[j])[static_cast<std::size_t>(s)] + 1;
            }
            for (const auto& node : b.curve.nodes()) {
                const int ra = ranks[node.a], rb = ranks[node.b];
                const int meet = aligned ? std::popcount(pick[node.a] & pick[node.b])
                                         : std::max(0, ra + rb - r);
                chi -= ra + rb - meet;
            }
            if (!best || chi > *best)
                best = chi;
            return;
        }
        for (auto m : choices[i]) {
            pick[i] = m;
            go(i + 1);
        }
    };
    go(0);
    return *best;
}

enum class Answer { Yes, No };

// ℓ-(semi)stability from the subset maxima over constant rank vectors.
inline Answer ell_by_subsets(const BundleData& b, bool aligned, bool strict) {
    const Int chi_e = chi_riemann_roch(b);
    const auto n = b.curve.num_components();
    for (int k = 1; k < b.rank; ++k) {
        const Int chi_f = max_chi_by_subsets(b, std::vector<int>(n, k), aligned);
        // chi_f / k vs chi_e / r
        const Int lhs = chi_f * b.rank, rhs = chi_e * k;
        if (strict ? lhs >= rhs : lhs > rhs)
            return Answer::No;
    }
    return Answer::Yes;
}

inline std::vector<std::vector<int>> all_proper_rank_vectors(std::size_t n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(n, 0);
    while (true) {
        std::size_t i = n;
        while (i > 0 && v[i - 1] == r)
            v[--i] = 0;
        if (i == 0)
            break;
        ++v[i - 1];
        const bool full = std::all_of(v.begin(), v.end(), [&](int x) { return x == r; });
        if (!full)
            out.push_back(v);
    }
    return out;
}

// w-(semi)stability: chi(F) r versus chi(E) sum w_i r_i for every rank vector.
inline Answer w_by_subsets(const BundleData& b, const std::vector<Rational>& w, bool aligned,
                           bool strict) {
    const Int chi_e = chi_riemann_roch(b);
    for (const auto& ranks : all_proper_rank_vectors(b.curve.num_components(), b.rank)) {
        const Int chi_f = max_chi_by_subsets(b, ranks, aligned);
        Rational weighted = 0;
        for (std::size_t i = 0; i < ranks.size(); ++i)
            weighted += w[i] * ranks[i];
        const Rational lhs = Rational(chi_f * b.rank), rhs = chi_e * weighted;
        if (strict ? lhs >= rhs : lhs > rhs)
            return Answer::No;
    }
    return Answer::Yes;
}

// All polarizations on n components whose weights have denominators <= q_max.
inline std::vector<std::vector<Rational>> polarization_grid(std::size_t n, int q_max) {
    std::set<Rational> fractions;
    for (int q = 1; q <= q_max; ++q)
        for (int p = 1; p < q; ++p)
            fractions.insert(Rational(p, q));
    std::vector<std::vector<Rational>> out;
    if (n == 1) {
        out.push_back({Rational(1)});
        return out;
    }
    std::vector<Rational> cur;
    std::function<void(Rational)> go = [&](Rational used) {
        if (cur.size() + 1 == n) {
            const Rational last = 1 - used;
            if (last > 0 && boost::multiprecision::denominator(last) <= q_max) {
                cur.push_back(last);
                out.push_back(cur);
                cur.pop_back();
            }
            return;
        }
        for (const auto& f : fractions) {
            if (used + f >= 1)
                break;
            cur.push_back(f);
            go(used + f);
            cur.pop_back();
        }
    };
    go(0);
    return out;
}

// Chain of rational components with the given splittings (descending).
inline BundleData rational_chain(const std::vector<std::vector<Int>>& splittings,
                                 lstab::Gluing gluing) {
    std::vector<lstab::Component> comps;
    std::vector<lstab::Node> nodes;
    std::vector<Int> degrees;
    std::vector<std::optional<lstab::Splitting>> splits;
    for (std::size_t i = 0; i < splittings.size(); ++i) {
        comps.push_back({"Y" + std::to_string(i + 1), 0});
        if (i > 0)
            nodes.push_back({i - 1, i});
        degrees.push_back(std::accumulate(splittings[i].begin(), splittings[i].end(), Int{0}));
        splits.push_back(splittings[i]);
    }
    return lstab::make_bundle(lstab::NodalCurve(comps, nodes),
                              static_cast<int>(splittings.front().size()), degrees, splits,
                              gluing);
}

// Every descending rank-r splitting with entries in [lo, hi].
inline std::vector<std::vector<Int>> splittings_in_range(int r, Int lo, Int hi) {
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur;
    std::function<void(Int)> go = [&](Int top) {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (Int a = top; a >= lo; --a) {
            cur.push_back(a);
            go(a);
            cur.pop_back();
        }
    };
    go(hi);
    return out;
}

} // namespace oracle
