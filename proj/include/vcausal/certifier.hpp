#pragma once

#include <array>
#include <string>
#include <vector>

#include "vcausal/behavior.hpp"
#include "vcausal/ch_facets.hpp"
#include "vcausal/errors.hpp"
#include "vcausal/inequality.hpp"
#include "vcausal/rational.hpp"
#include "vcausal/simplex.hpp"

namespace vcausal::certify {

/// LP variable layout for a 4-party binary behavior: one variable per
/// (setting block, outcome) pair, blocks contiguous, matching
/// Behavior::pack_settings / pack_outcomes (party A most significant).
inline constexpr int kParties = 4;
inline constexpr int kSettingBlocks = 16;
inline constexpr int kOutcomes = 16;
inline constexpr int kVars = kSettingBlocks * kOutcomes;

inline int var_index(int setting_block, int outcome) { return setting_block * kOutcomes + outcome; }

inline Behavior<Rational> lp_shape() { return Behavior<Rational>::all_binary(kParties); }

/// Behavior table flattened into the LP variable order.
inline std::vector<Rational> flatten(const Behavior<Rational>& b) {
    if (b.parties != kParties || b.setting_count() != kSettingBlocks || b.outcome_count() != kOutcomes)
        throw WrongShape("expected a 4-party binary behavior");
    std::vector<Rational> x(kVars);
    for (int s = 0; s < kSettingBlocks; ++s)
        for (int o = 0; o < kOutcomes; ++o) x[var_index(s, o)] = b.table[s][o];
    return x;
}

inline Behavior<Rational> unflatten(const std::vector<Rational>& x) {
    if (x.size() != kVars) throw WrongShape("expected 256 joint probabilities");
    auto b = lp_shape();
    for (int s = 0; s < kSettingBlocks; ++s)
        for (int o = 0; o < kOutcomes; ++o) b.table[s][o] = x[var_index(s, o)];
    return b;
}

/// One unit-sum equality per setting block: 16 rows.
inline std::vector<lp::Row> normalization_rows() {
    std::vector<lp::Row> rows;
    rows.reserve(kSettingBlocks);
    for (int s = 0; s < kSettingBlocks; ++s) {
        lp::Row r;
        r.coeff.assign(kVars, Rational(0));
        r.rel = lp::Relation::Eq;
        r.rhs = 1;
        for (int o = 0; o < kOutcomes; ++o) r.coeff[var_index(s, o)] = 1;
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Every 3-party marginal is independent of the excluded party's setting:
/// for each excluded party, each context of the other settings and each
/// outcome tuple of the kept parties, the sums at excluded-setting 0 and 1
/// agree. 4 x 8 x 8 = 256 rows (redundancies left in; the solver drops them).
inline std::vector<lp::Row> no_signalling_rows() {
    const auto shape = lp_shape();
    std::vector<lp::Row> rows;
    rows.reserve(256);
    for (int excluded = 0; excluded < kParties; ++excluded) {
        for (int s = 0; s < kSettingBlocks; ++s) {
            auto st = shape.unpack_settings(s);
            if (st[excluded] != 0) continue;  // pair this block with its partner below
            auto st2 = st;
            st2[excluded] = 1;
            const int s2 = shape.pack_settings(st2);
            for (int kept_out = 0; kept_out < kOutcomes / 2; ++kept_out) {
                lp::Row r;
                r.coeff.assign(kVars, Rational(0));
                r.rel = lp::Relation::Eq;
                r.rhs = 0;
                // distribute the kept outcome bits around the excluded slot
                for (int eo = 0; eo < 2; ++eo) {
                    std::vector<int> ot(kParties);
                    int rest = kept_out;
                    for (int p = kParties - 1; p >= 0; --p) {
                        if (p == excluded) {
                            ot[p] = eo;
                        } else {
                            ot[p] = rest & 1;
                            rest >>= 1;
                        }
                    }
                    const int o = shape.pack_outcomes(ot);
                    r.coeff[var_index(s, o)] += 1;
                    r.coeff[var_index(s2, o)] -= 1;
                }
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

/// For each (a,x,d,w) block and each CH facet: the facet applied to the
/// unnormalized conditional p(b,c|y,z,a,x,d,w) * p(a,d|x,w), which is linear
/// in the joint. 8 facets x 16 blocks = 128 <= rows with rhs 0.
inline std::vector<lp::Row> bc_local_rows() {
    const auto shape = lp_shape();
    const auto& facets = ch_facets();
    std::vector<lp::Row> rows;
    rows.reserve(facets.size() * 16);
    for (std::size_t f = 0; f < facets.size(); ++f) {
        for (int a = 0; a < 2; ++a)
            for (int x = 0; x < 2; ++x)
                for (int d = 0; d < 2; ++d)
                    for (int w = 0; w < 2; ++w) {
                        lp::Row r;
                        r.coeff.assign(kVars, Rational(0));
                        r.rel = lp::Relation::Le;
                        r.rhs = 0;
                        for (int y = 0; y < 2; ++y)
                            for (int z = 0; z < 2; ++z)
                                for (int ob = 0; ob < 2; ++ob)
                                    for (int oc = 0; oc < 2; ++oc) {
                                        const int cf = facets[f].coeff[ChFacet::index(y, z, ob, oc)];
                                        if (cf == 0) continue;
                                        const int s = shape.pack_settings({x, y, z, w});
                                        const int o = shape.pack_outcomes({a, ob, oc, d});
                                        r.coeff[var_index(s, o)] += cf;
                                    }
                        rows.push_back(std::move(r));
                    }
    }
    return rows;
}

inline void append_rows(lp::LinearProgram& lp, std::vector<lp::Row> rows) {
    for (auto& r : rows) lp.rows.push_back(std::move(r));
}

/// maximize <inequality functional> over the no-signalling polytope,
/// optionally intersected with the BC-local constraints.
inline lp::LinearProgram bound_program(const Inequality& ineq, bool bc_local) {
    lp::LinearProgram p;
    p.num_vars = kVars;
    p.objective = to_linear_functional(ineq, lp_shape());
    append_rows(p, normalization_rows());
    append_rows(p, no_signalling_rows());
    if (bc_local) append_rows(p, bc_local_rows());
    return p;
}

struct BoundReport {
    Rational maximum{0};
    lp::Certificate certificate;
    bool verified = false;
    std::string verify_reason;
    lp::SolveInfo info;
};

/// Solves the bound LP and re-checks the certificate with the independent
/// verifier. With bc_local the optimum is the inequality's causal bound.
inline BoundReport certify_bound(const Inequality& ineq = hidden_influence_inequality(),
                                 bool bc_local = true) {
    const auto program = bound_program(ineq, bc_local);
    BoundReport report;
    report.certificate = lp::maximize(program, &report.info);
    report.maximum = report.certificate.objective;
    const auto check = lp::verify(program, report.certificate);
    report.verified = check.ok;
    report.verify_reason = check.reason;
    return report;
}

/// Brute-force maximum of the inequality over all 256 deterministic local
/// strategies (4 response functions per party). Exact, independent of the LP.
struct DeterministicMaximum {
    Rational value{0};
    std::vector<std::vector<int>> strategy;  // [party][setting] -> outcome
};

inline DeterministicMaximum deterministic_maximum(const Inequality& ineq = hidden_influence_inequality()) {
    DeterministicMaximum best;
    bool first = true;
    for (int code = 0; code < 256; ++code) {
        std::vector<std::vector<int>> strat(kParties, std::vector<int>(2));
        int rest = code;
        for (int p = 0; p < kParties; ++p) {
            strat[p][0] = rest & 1;
            strat[p][1] = (rest >> 1) & 1;
            rest >>= 2;
        }
        const auto b = deterministic_behavior<Rational>(strat);
        const Rational v = evaluate(ineq, b, Rational(0));
        if (first || v > best.value) {
            best.value = v;
            best.strategy = strat;
            first = false;
        }
    }
    return best;
}

struct FeasibilityReport {
    bool feasible = false;
    lp::Certificate certificate;
    bool verified = false;
    std::string verify_reason;
    /// Infeasibility survives every perturbation of the marginal data within
    /// `radius` iff margin > allowance: the Farkas combination stays negative.
    bool robust = false;
    Rational margin{0};     // -(farkas . rhs)
    Rational allowance{0};  // radius * sum |farkas_i| over marginal rows
    lp::SolveInfo info;
};

struct MarginalProgram {
    lp::LinearProgram lp;
    int marginal_rows_begin = 0;
};

namespace detail {

inline void require_marginal_shape(const Behavior<Rational>& b, const char* name) {
    if (b.parties != 3 || b.settings != std::vector<int>{2, 2, 2} || b.outcomes != std::vector<int>{2, 2, 2})
        throw WrongShape(std::string(name) + " must be a 3-party binary behavior");
}

/// Rows pinning a 3-party marginal of the joint to `target`, with the
/// excluded party's setting fixed to 0 (the no-signalling rows make every
/// other choice equivalent). 8 x 8 = 64 equality rows.
inline std::vector<lp::Row> marginal_rows(const Behavior<Rational>& target, int excluded) {
    const auto shape = lp_shape();
    std::vector<lp::Row> rows;
    rows.reserve(64);
    std::vector<int> kept;
    for (int p = 0; p < kParties; ++p)
        if (p != excluded) kept.push_back(p);
    for (int ms = 0; ms < target.setting_count(); ++ms) {
        auto mst = target.unpack_settings(ms);
        std::vector<int> st(kParties, 0);
        for (std::size_t i = 0; i < kept.size(); ++i) st[kept[i]] = mst[i];
        const int s = shape.pack_settings(st);
        for (int mo = 0; mo < target.outcome_count(); ++mo) {
            auto mot = target.unpack_outcomes(mo);
            lp::Row r;
            r.coeff.assign(kVars, Rational(0));
            r.rel = lp::Relation::Eq;
            r.rhs = target.table[ms][mo];
            for (int eo = 0; eo < 2; ++eo) {
                std::vector<int> ot(kParties);
                for (std::size_t i = 0; i < kept.size(); ++i) ot[kept[i]] = mot[i];
                ot[excluded] = eo;
                r.coeff[var_index(s, shape.pack_outcomes(ot))] = 1;
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

} // namespace detail

/// Feasibility program: no-signalling (+ BC-local) joint with the given ABD
/// and ACD marginals. abd excludes party C (index 2), acd excludes B (1).
inline MarginalProgram marginal_program(const Behavior<Rational>& abd,
                                        const Behavior<Rational>& acd,
                                        bool bc_local) {
    detail::require_marginal_shape(abd, "abd");
    detail::require_marginal_shape(acd, "acd");
    MarginalProgram mp;
    mp.lp.num_vars = kVars;
    mp.lp.objective.assign(kVars, Rational(0));
    append_rows(mp.lp, normalization_rows());
    append_rows(mp.lp, no_signalling_rows());
    if (bc_local) append_rows(mp.lp, bc_local_rows());
    mp.marginal_rows_begin = static_cast<int>(mp.lp.rows.size());
    append_rows(mp.lp, detail::marginal_rows(abd, 2));
    append_rows(mp.lp, detail::marginal_rows(acd, 1));
    return mp;
}

/// Does any no-signalling, BC-local 4-party joint have these ABD and ACD
/// marginals? The two targets must agree on their common A-D marginal within
/// consistency_tol (InconsistentMarginals otherwise). On infeasibility the
/// Farkas certificate is additionally checked to be robust against
/// perturbing every marginal entry by up to `radius`.
inline FeasibilityReport marginal_feasibility(const Behavior<Rational>& abd,
                                              const Behavior<Rational>& acd,
                                              bool bc_local = true,
                                              const Rational& consistency_tol = Rational(1, 1000000000),
                                              const Rational& radius = Rational(1, 1000000000)) {
    detail::require_marginal_shape(abd, "abd");
    detail::require_marginal_shape(acd, "acd");
    {
        const auto ad_from_abd = marginal_behavior(abd, {0, 2}, consistency_tol);
        const auto ad_from_acd = marginal_behavior(acd, {0, 2}, consistency_tol);
        for (int s = 0; s < ad_from_abd.setting_count(); ++s)
            for (int o = 0; o < ad_from_abd.outcome_count(); ++o)
                if (ScalarTraits<Rational>::abs(ad_from_abd.table[s][o] - ad_from_acd.table[s][o]) >
                    consistency_tol)
                    throw InconsistentMarginals(
                        "the ABD and ACD targets disagree on the shared A-D marginal");
    }

    const auto mp = marginal_program(abd, acd, bc_local);
    FeasibilityReport report;
    report.certificate = lp::maximize(mp.lp, &report.info);
    report.feasible = report.certificate.kind == lp::Certificate::Kind::Optimal;
    const auto check = lp::verify(mp.lp, report.certificate);
    report.verified = check.ok;
    report.verify_reason = check.reason;

    if (!report.feasible) {
        Rational dot(0), weight(0);
        for (std::size_t i = 0; i < mp.lp.rows.size(); ++i) {
            dot += report.certificate.farkas[i] * mp.lp.rows[i].rhs;
            if (static_cast<int>(i) >= mp.marginal_rows_begin)
                weight += ScalarTraits<Rational>::abs(report.certificate.farkas[i]);
        }
        report.margin = -dot;
        report.allowance = radius * weight;
        report.robust = report.margin > report.allowance;
    }
    return report;
}

/// Explicit local model for a 2222 behavior as weights on the 16 deterministic
/// strategies, or an infeasibility certificate. Cross-oracle for the CH facet
/// test.
struct Decomposition {
    bool local = false;
    std::vector<Rational> weights;  // weight of strategy k = (fB0,fB1,fC0,fC1) bits
    lp::Certificate certificate;
    bool verified = false;
    std::string verify_reason;
};

inline Decomposition local_decomposition_2222(const Behavior<Rational>& b2, const Rational& ns_tol = Rational(0)) {
    require_2222(b2);
    if (!is_no_signalling(b2, ns_tol)) throw SignallingInput();

    lp::LinearProgram p;
    p.num_vars = 16;
    p.objective.assign(16, Rational(0));
    std::vector<Behavior<Rational>> vertices;
    vertices.reserve(16);
    for (int code = 0; code < 16; ++code) {
        std::vector<std::vector<int>> strat{{code & 1, (code >> 1) & 1}, {(code >> 2) & 1, (code >> 3) & 1}};
        vertices.push_back(deterministic_behavior<Rational>(strat));
    }
    for (int s = 0; s < 4; ++s)
        for (int o = 0; o < 4; ++o) {
            lp::Row r;
            r.coeff.assign(16, Rational(0));
            r.rel = lp::Relation::Eq;
            r.rhs = b2.table[s][o];
            for (int k = 0; k < 16; ++k) r.coeff[k] = vertices[k].table[s][o];
            p.rows.push_back(std::move(r));
        }
    {
        lp::Row r;
        r.coeff.assign(16, Rational(1));
        r.rel = lp::Relation::Eq;
        r.rhs = 1;
        p.rows.push_back(std::move(r));
    }

    Decomposition d;
    d.certificate = lp::maximize(p);
    d.local = d.certificate.kind == lp::Certificate::Kind::Optimal;
    if (d.local) d.weights = d.certificate.primal;
    const auto check = lp::verify(p, d.certificate);
    d.verified = check.ok;
    d.verify_reason = check.reason;
    return d;
}

/// Nonlocal B-C conditional blocks of a 4-party behavior: for every
/// (a,x,d,w) with positive mass, condition and run the facet test.
template <class T>
struct NonlocalBlock {
    int a = 0, x = 0, d = 0, w = 0;
    int facet = -1;
    T value{0};
};

template <class T>
std::vector<NonlocalBlock<T>> nonlocal_bc_blocks(const Behavior<T>& b, const T& tol) {
    if (b.parties != 4) throw WrongShape("expected a 4-party behavior");
    std::vector<NonlocalBlock<T>> found;
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x)
            for (int d = 0; d < 2; ++d)
                for (int w = 0; w < 2; ++w) {
                    Behavior<T> bc;
                    try {
                        bc = condition(b, {{0, x, a}, {3, w, d}});
                    } catch (const ZeroProbabilityCondition&) {
                        continue;  // empty block: vacuously local
                    }
                    const auto verdict = is_local_2222(bc, tol);
                    if (!verdict.local) found.push_back({a, x, d, w, verdict.facet, verdict.value});
                }
    return found;
}

} // namespace vcausal::certify
