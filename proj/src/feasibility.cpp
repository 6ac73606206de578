#include "lstab/feasibility.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "lstab/error.hpp"
#include "lstab/stability.hpp"

namespace lstab {

std::string_view to_string(Side side) noexcept {
    return side == Side::Guaranteed ? "guaranteed" : "potential";
}

std::string_view to_string(PolarizationOutcome outcome) noexcept {
    switch (outcome) {
    case PolarizationOutcome::Feasible: return "Feasible";
    case PolarizationOutcome::Infeasible: return "Infeasible";
    case PolarizationOutcome::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

std::vector<Int> LinearConstraint::homogeneous() const {
    std::vector<Int> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        out[i] = checked_add(coeffs[i], -bound);
    return out;
}

std::string LinearConstraint::to_string() const {
    std::ostringstream out;
    out << "rank (";
    for (std::size_t i = 0; i < ranks.size(); ++i)
        out << (i ? "," : "") << ranks[i];
    out << "): " << bound << (strict ? " < " : " <= ");
    bool any = false;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0)
            continue;
        out << (any ? " + " : "") << coeffs[i] << "*w" << (i + 1);
        any = true;
    }
    if (!any)
        out << "0";
    return out.str();
}

namespace {

Int gcd_of(const std::vector<Int>& v) {
    Int g = 0;
    for (auto x : v)
        g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

void normalize(std::vector<Int>& v) {
    if (const Int g = gcd_of(v); g > 1)
        for (auto& x : v)
            x /= g;
}

bool all_nonnegative(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](Int x) { return x >= 0; });
}

bool all_zero(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

// True when w > 0 alone forces the homogeneous constraint.
bool implied_by_positivity(const std::vector<Int>& h, bool strict) {
    return all_nonnegative(h) && (!strict || !all_zero(h));
}

// No w > 0 satisfies this single homogeneous constraint.
bool alone_infeasible(const std::vector<Int>& h, bool strict) {
    return std::all_of(h.begin(), h.end(), [](Int x) { return x <= 0; }) &&
           (strict || !all_zero(h));
}

// Preference among constraints for reporting: smaller support, larger total
// rank, lexicographically larger rank vector.
bool preferred(const LinearConstraint& a, const LinearConstraint& b) {
    return prefer_witness(0, a.ranks, 0, b.ranks);
}

} // namespace

FeasibilitySystem build_system(const BundleData& bundle, bool strict, Side side) {
    validate(bundle);
    if (bundle.curve.has_self_nodes())
        fail(ErrorKind::DecisionModeUnavailable, "curve has a self-node");
    const auto n = bundle.curve.num_components();
    const Int chi_e = euler_characteristic(bundle);
    const auto model = achievability_of(bundle.gluing);

    FeasibilitySystem system;
    system.num_vars = n;
    system.side = side;
    system.strict = strict;

    std::map<std::vector<Int>, LinearConstraint> by_direction;
    for (auto& ranks : proper_rank_vectors(n, bundle.rank)) {
        const auto bracket = chi_bracket(bundle, ranks);
        Int cand = side == Side::Guaranteed ? bracket.lower : bracket.upper;
        if (model)
            cand = model_chi(bundle, ranks, *model);
        LinearConstraint c{ranks, {}, checked_mul(cand, bundle.rank), strict};
        for (auto r : ranks)
            c.coeffs.push_back(checked_mul(chi_e, r));
        auto h = c.homogeneous();
        if (implied_by_positivity(h, strict))
            continue;
        normalize(h);
        auto [it, inserted] = by_direction.try_emplace(h, c);
        // Proportional homogeneous parts describe the same half-space.
        if (!inserted && preferred(c, it->second))
            it->second = c;
    }
    for (auto& [h, c] : by_direction)
        system.constraints.push_back(std::move(c));
    std::sort(system.constraints.begin(), system.constraints.end(), preferred);
    return system;
}

FeasibilitySystem scaled(const FeasibilitySystem& system, Int factor) {
    if (factor <= 0)
        fail(ErrorKind::Precondition, "scale factor must be positive");
    auto out = system;
    for (auto& c : out.constraints) {
        for (auto& a : c.coeffs)
            a = checked_mul(a, factor);
        c.bound = checked_mul(c.bound, factor);
    }
    return out;
}

bool verify_certificate(const FeasibilitySystem& system, const InfeasibilityCertificate& cert) {
    std::vector<Int> v(system.num_vars, 0);
    bool strict_used = false;
    for (const auto& [index, weight] : cert.multipliers) {
        if (index >= system.constraints.size() || weight < 0)
            return false;
        if (weight == 0)
            continue;
        const auto& c = system.constraints[index];
        const auto h = c.homogeneous();
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = checked_add(v[i], checked_mul(weight, h[i]));
        strict_used = strict_used || c.strict;
    }
    const bool nonpositive = std::all_of(v.begin(), v.end(), [](Int x) { return x <= 0; });
    return nonpositive && (!all_zero(v) || strict_used);
}

namespace {

struct Row {
    std::vector<Int> a;
    bool strict = false;
    bool positivity = false;
    std::vector<Int> mult; // over constraints, then positivity rows
};

InfeasibilityCertificate certificate_from(const FeasibilitySystem& system, const Row& row) {
    InfeasibilityCertificate cert;
    const auto m = system.constraints.size();
    for (std::size_t k = 0; k < m; ++k)
        if (row.mult[k] > 0)
            cert.multipliers.emplace_back(k, row.mult[k]);
    cert.combination.assign(system.num_vars, 0);
    for (const auto& [k, weight] : cert.multipliers) {
        const auto h = system.constraints[k].homogeneous();
        for (std::size_t i = 0; i < h.size(); ++i)
            cert.combination[i] = checked_add(cert.combination[i], checked_mul(weight, h[i]));
        cert.uses_strict = cert.uses_strict || system.constraints[k].strict;
    }
    std::ostringstream out;
    if (cert.multipliers.size() == 1) {
        out << "constraint " << system.constraints[cert.multipliers.front().first].to_string()
            << " holds for no positive polarization";
    } else {
        out << "nonnegative combination of " << cert.multipliers.size()
            << " constraints is nonpositive on the open simplex";
    }
    cert.summary = out.str();
    return cert;
}

Row combine(const Row& pos, const Row& neg, std::size_t var) {
    const Int alpha = pos.a[var];
    const Int beta = -neg.a[var];
    Row out;
    out.strict = pos.strict || neg.strict;
    out.a.resize(pos.a.size());
    for (std::size_t i = 0; i < pos.a.size(); ++i)
        out.a[i] = checked_add(checked_mul(beta, pos.a[i]), checked_mul(alpha, neg.a[i]));
    out.mult.resize(pos.mult.size());
    for (std::size_t i = 0; i < pos.mult.size(); ++i)
        out.mult[i] = checked_add(checked_mul(beta, pos.mult[i]), checked_mul(alpha, neg.mult[i]));
    // a == sum mult * (original homogeneous rows) must keep holding exactly.
    const Int g = std::gcd(gcd_of(out.a), gcd_of(out.mult));
    if (g > 1) {
        for (auto& x : out.a)
            x /= g;
        for (auto& x : out.mult)
            x /= g;
    }
    return out;
}

struct Interval {
    std::optional<Rational> lower, upper;
    bool lower_open = false, upper_open = false;

    void raise(const Rational& v, bool open) {
        if (!lower || v > *lower || (v == *lower && open)) {
            lower = v;
            lower_open = open;
        }
    }
    void cap(const Rational& v, bool open) {
        if (!upper || v < *upper || (v == *upper && open)) {
            upper = v;
            upper_open = open;
        }
    }
    bool contains(const Rational& v) const {
        if (lower && (v < *lower || (lower_open && v == *lower)))
            return false;
        if (upper && (v > *upper || (upper_open && v == *upper)))
            return false;
        return true;
    }
};

// Prefers 1, then the point with the smallest denominator.
Rational pick(const Interval& iv) {
    if (iv.contains(1))
        return 1;
    if (!iv.upper) {
        boost::multiprecision::cpp_int n = numerator(*iv.lower) / denominator(*iv.lower);
        return Rational(n + 1);
    }
    for (long q = 1; q <= 100000; ++q) {
        // Smallest p with p/q >= lower.
        const Rational scaled = *iv.lower * q;
        boost::multiprecision::cpp_int p = numerator(scaled) / denominator(scaled);
        if (Rational(p) < scaled)
            ++p;
        for (int step = 0; step < 2; ++step, ++p) {
            const Rational candidate(p, q);
            if (iv.contains(candidate))
                return candidate;
        }
    }
    return (*iv.lower + *iv.upper) / 2;
}

} // namespace

SolveResult solve_system(const FeasibilitySystem& system) {
    const auto n = system.num_vars;
    const auto m = system.constraints.size();
    SolveResult result;

    for (std::size_t k = 0; k < m; ++k) {
        const auto& c = system.constraints[k];
        if (alone_infeasible(c.homogeneous(), c.strict)) {
            Row single{c.homogeneous(), c.strict, false, std::vector<Int>(m + n, 0)};
            single.mult[k] = 1;
            result.certificate = certificate_from(system, single);
            return result;
        }
    }

    std::vector<Row> rows;
    for (std::size_t k = 0; k < m; ++k) {
        Row r{system.constraints[k].homogeneous(), system.constraints[k].strict, false,
              std::vector<Int>(m + n, 0)};
        r.mult[k] = 1;
        rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
        Row r{std::vector<Int>(n, 0), true, true, std::vector<Int>(m + n, 0)};
        r.a[i] = 1;
        r.mult[m + i] = 1;
        rows.push_back(std::move(r));
    }

    // levels[v] holds the rows before eliminating variable v.
    std::vector<std::vector<Row>> levels(n);
    for (std::size_t step = n; step-- > 0;) {
        levels[step] = rows;
        std::vector<Row> next;
        std::vector<const Row*> pos, neg;
        for (const auto& r : rows) {
            if (r.a[step] > 0)
                pos.push_back(&r);
            else if (r.a[step] < 0)
                neg.push_back(&r);
            else
                next.push_back(r);
        }
        for (const auto* p : pos)
            for (const auto* q : neg)
                next.push_back(combine(*p, *q, step));

        std::map<std::vector<Int>, Row> unique;
        for (auto& r : next) {
            if (all_zero(r.a)) {
                if (r.strict) {
                    result.certificate = certificate_from(system, r);
                    return result;
                }
                continue;
            }
            if (!r.positivity && implied_by_positivity(r.a, r.strict))
                continue;
            auto key = r.a;
            normalize(key);
            auto [it, inserted] = unique.try_emplace(std::move(key), r);
            if (!inserted) {
                auto& kept = it->second;
                if ((r.strict && !kept.strict) || (r.positivity && !kept.positivity))
                    kept = r;
            }
        }
        rows.clear();
        for (auto& [a, r] : unique)
            rows.push_back(std::move(r));
    }

    std::vector<Rational> w(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        Interval iv;
        for (const auto& r : levels[v]) {
            Rational rest = 0;
            for (std::size_t i = 0; i < v; ++i)
                rest += w[i] * r.a[i];
            if (r.a[v] > 0)
                iv.raise(-rest / r.a[v], r.strict);
            else if (r.a[v] < 0)
                iv.cap(rest / (-r.a[v]), r.strict);
        }
        w[v] = pick(iv);
    }
    Rational sum = 0;
    for (const auto& x : w)
        sum += x;
    for (auto& x : w)
        x /= sum;
    result.feasible = true;
    result.witness = Polarization(std::move(w));
    return result;
}

PolarizationResult exists_polarization(const BundleData& bundle, bool strict) {
    PolarizationResult result;
    result.guaranteed = build_system(bundle, strict, Side::Guaranteed);
    result.potential = build_system(bundle, strict, Side::Potential);

    auto accept = [&](SolveResult solved) {
        const auto check = decide_w(bundle, *solved.witness, strict);
        if (check.status != Status::CertifiedYes)
            fail(ErrorKind::Precondition, "reconstructed polarization " +
                                              solved.witness->to_string() +
                                              " failed re-verification");
        result.outcome = PolarizationOutcome::Feasible;
        result.witness = std::move(solved.witness);
        result.notes.push_back("witness re-verified by decide_w");
    };

    auto potential = solve_system(result.potential);
    if (potential.feasible) {
        accept(std::move(potential));
        return result;
    }
    auto guaranteed = achievability_of(bundle.gluing) ? std::move(potential)
                                                       : solve_system(result.guaranteed);
    if (!guaranteed.feasible) {
        if (!verify_certificate(result.guaranteed, *guaranteed.certificate))
            fail(ErrorKind::Precondition, "infeasibility certificate failed re-verification");
        result.outcome = PolarizationOutcome::Infeasible;
        result.certificate = std::move(guaranteed.certificate);
        return result;
    }
    result.outcome = PolarizationOutcome::Indeterminate;
    result.notes.push_back("guaranteed and potential systems disagree; depends on the gluing");
    return result;
}

} // namespace lstab
