#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vcausal/behavior.hpp"
#include "vcausal/quantum.hpp"
#include "vcausal/rational.hpp"

namespace vcausal {

/// One correlator term: coefficient times the average of the product of the
/// listed parties' +-1 outcomes at the listed settings.
struct CorrelatorTerm {
    std::vector<std::pair<int, int>> factors;  // (party, setting), parties distinct
    Rational coeff;

    std::string to_string() const {
        static const char* names = "ABCD";
        std::string s = "<";
        for (const auto& [p, x] : factors) {
            s += (p < 4 ? names[p] : '?');
            s += std::to_string(x);
        }
        return s + ">";
    }
};

/// A linear correlator inequality: sum coeff * <term> <= bound over the model
/// class it certifies.
struct Inequality {
    std::vector<CorrelatorTerm> terms;
    Rational bound;
};

/// The 4-party, 23-term inequality with bound 7. Parties A=0, B=1, C=2, D=3;
/// no term involves both B and C, so it can be evaluated without ever
/// measuring B and C in the same run.
inline const Inequality& hidden_influence_inequality() {
    static const Inequality ineq = [] {
        constexpr int A = 0, B = 1, C = 2, D = 3;
        Inequality q;
        q.bound = 7;
        auto add = [&q](long coeff, std::vector<std::pair<int, int>> factors) {
            q.terms.push_back({std::move(factors), Rational(coeff)});
        };
        add(-3, {{A, 0}});
        add(-1, {{B, 0}});
        add(-1, {{B, 1}});
        add(-1, {{C, 0}});
        add(-3, {{D, 0}});
        add(-1, {{A, 1}, {B, 0}});
        add(-1, {{A, 1}, {B, 1}});
        add(+1, {{A, 0}, {C, 0}});
        add(+2, {{A, 1}, {C, 0}});
        add(+1, {{A, 0}, {D, 0}});
        add(+1, {{B, 0}, {D, 1}});
        add(-1, {{B, 1}, {D, 1}});
        add(-1, {{C, 0}, {D, 0}});
        add(-2, {{C, 1}, {D, 1}});
        add(+1, {{A, 0}, {B, 0}, {D, 0}});
        add(+1, {{A, 0}, {B, 0}, {D, 1}});
        add(+1, {{A, 0}, {B, 1}, {D, 0}});
        add(-1, {{A, 0}, {B, 1}, {D, 1}});
        add(-1, {{A, 1}, {B, 0}, {D, 0}});
        add(-1, {{A, 1}, {B, 1}, {D, 0}});
        add(+1, {{A, 0}, {C, 0}, {D, 0}});
        add(+2, {{A, 1}, {C, 0}, {D, 0}});
        add(-2, {{A, 0}, {C, 1}, {D, 1}});
        return q;
    }();
    return ineq;
}

/// Average of the product of the term's +-1 outcomes. Absent parties are
/// summed out at setting 0 after checking that the choice does not matter;
/// if the summed-out marginal varies with an absent party's setting beyond
/// tol, the correlator is ill-defined and SignallingAmbiguity is raised.
template <class T>
T correlator(const Behavior<T>& b, const CorrelatorTerm& term, const T& tol) {
    std::vector<int> term_setting(b.parties, -1);
    for (const auto& [party, setting] : term.factors) {
        if (party < 0 || party >= b.parties || term_setting[party] >= 0) throw DuplicateParty();
        term_setting[party] = setting;
    }
    std::vector<int> absent;
    for (int p = 0; p < b.parties; ++p)
        if (term_setting[p] < 0) absent.push_back(p);

    auto value_at = [&](const std::vector<int>& full_setting) {
        const int s = b.pack_settings(full_setting);
        T acc(0);
        for (int o = 0; o < b.outcome_count(); ++o) {
            const auto ot = b.unpack_outcomes(o);
            int sign = 1;
            for (const auto& [party, setting] : term.factors) sign *= outcome_sign(ot[party]);
            acc += T(sign) * b.table[s][o];
        }
        return acc;
    };

    std::vector<int> setting = term_setting;
    for (int p : absent) setting[p] = 0;
    const T value = value_at(setting);

    // every assignment of the absent parties' settings must give the same value
    std::vector<int> radix;
    int combos = 1;
    for (int p : absent) {
        radix.push_back(b.settings[p]);
        combos *= b.settings[p];
    }
    for (int k = 1; k < combos; ++k) {
        auto digits = Behavior<T>::unpack(k, radix);
        auto alt = term_setting;
        for (std::size_t i = 0; i < absent.size(); ++i) alt[absent[i]] = digits[i];
        if (ScalarTraits<T>::abs(value_at(alt) - value) > tol)
            throw SignallingAmbiguity("correlator " + term.to_string() +
                                      " depends on an absent party's setting");
    }
    return value;
}

/// Sum of coefficient * correlator over the inequality's terms.
template <class T>
T evaluate(const Inequality& ineq, const Behavior<T>& b, const T& tol) {
    T acc(0);
    for (const auto& term : ineq.terms) {
        if constexpr (ScalarTraits<T>::exact)
            acc += term.coeff * correlator(b, term, tol);
        else
            acc += to_double(term.coeff) * correlator(b, term, tol);
    }
    return acc;
}

inline double evaluate_S(const Behavior<double>& b, double tol = 1e-9) {
    return evaluate(hidden_influence_inequality(), b, tol);
}

/// Same functional evaluated through operator expectations instead of the
/// probability table. Must agree with evaluate_S(behavior_of(m)) to 1e-10.
inline double evaluate_S_quantum(const QuantumModel& m) {
    double acc = 0.0;
    for (const auto& term : hidden_influence_inequality().terms)
        acc += to_double(term.coeff) * expectation(m, term.factors);
    return acc;
}

/// The inequality as an exact coefficient vector over the full joint
/// probability table of the given shape, with absent parties pinned to
/// setting 0. On no-signalling behaviors, dot(functional, table) = evaluate.
template <class T>
std::vector<Rational> to_linear_functional(const Inequality& ineq, const Behavior<T>& shape) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(shape.setting_count()) * shape.outcome_count(), Rational(0));
    const int ocount = shape.outcome_count();
    for (const auto& term : ineq.terms) {
        std::vector<int> setting(shape.parties, 0);
        for (const auto& [party, s] : term.factors) setting[party] = s;
        const int sidx = shape.pack_settings(setting);
        for (int o = 0; o < ocount; ++o) {
            const auto ot = shape.unpack_outcomes(o);
            int sign = 1;
            for (const auto& [party, s] : term.factors) sign *= outcome_sign(ot[party]);
            coeffs[static_cast<std::size_t>(sidx) * ocount + o] += term.coeff * sign;
        }
    }
    return coeffs;
}

} // namespace vcausal
