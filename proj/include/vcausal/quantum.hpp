#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "vcausal/behavior.hpp"
#include "vcausal/complex_matrix.hpp"
#include "vcausal/errors.hpp"

namespace vcausal {

/// A +-1-valued single-qubit measurement: Hermitian involution (O^2 = I).
struct Observable {
    ComplexMatrix matrix;
    std::string label;

    bool is_valid(double tol = 1e-12) const {
        if (matrix.rows() != 2 || matrix.cols() != 2) return false;
        if (!matrix.is_hermitian(tol)) return false;
        return (matrix * matrix - ComplexMatrix::identity(2)).norm_inf() <= tol;
    }
};

/// Eigenprojectors of an involution: P+- = (I +- O)/2. Outcome index 0 is the
/// +1 eigenvalue, index 1 is -1.
inline std::pair<ComplexMatrix, ComplexMatrix> projectors(const Observable& o) {
    const auto id = ComplexMatrix::identity(2);
    if ((o.matrix * o.matrix - id).norm_inf() > 1e-12)
        throw NotInvolution("observable '" + o.label + "' has O^2 != I");
    const Complex half(0.5);
    return {half * (id + o.matrix), half * (id - o.matrix)};
}

inline ComplexMatrix projector(const Observable& o, int outcome) {
    auto [plus, minus] = projectors(o);
    return outcome == 0 ? plus : minus;
}

/// Sign carried by an outcome index: 0 -> +1, 1 -> -1.
inline int outcome_sign(int outcome) { return outcome == 0 ? 1 : -1; }

/// n-qubit pure state plus one observable per party and setting.
struct QuantumModel {
    StateVector state;
    std::vector<std::vector<Observable>> observables;  // [party][setting]

    int parties() const { return static_cast<int>(observables.size()); }
    int settings(int party) const { return static_cast<int>(observables[party].size()); }

    void validate(double tol = 1e-12) const {
        if (state.dimension() != (1 << parties()))
            throw WrongShape("state dimension does not match party count");
        if (std::abs(state.squared_norm() - 1.0) > tol)
            throw WrongShape("state is not normalized");
        for (const auto& party : observables)
            for (const auto& o : party)
                if (!o.is_valid(tol)) throw NotInvolution("observable '" + o.label + "' is invalid");
    }
};

/// <state| O_1 (x) ... (x) I ... |state> with identity on parties absent from
/// the term. The term lists (party, setting) pairs; parties must be distinct.
inline double expectation(const QuantumModel& m, const std::vector<std::pair<int, int>>& term) {
    std::vector<bool> seen(m.parties(), false);
    StateVector phi = m.state;
    for (const auto& [party, setting] : term) {
        if (party < 0 || party >= m.parties() || seen[party]) throw DuplicateParty();
        seen[party] = true;
        phi = apply_one_qubit(phi, m.parties(), party, m.observables[party][setting].matrix);
    }
    const Complex val = m.state.inner(phi);
    return val.real();
}

/// Full conditional probability table p(outcomes | settings) via the Born rule.
/// Tiny negative entries from float round-off are clamped to zero.
inline Behavior<double> behavior_of(const QuantumModel& m) {
    const int n = m.parties();
    std::vector<int> settings_per(n), outcomes_per(n, 2);
    for (int p = 0; p < n; ++p) settings_per[p] = m.settings(p);
    Behavior<double> b(settings_per, outcomes_per);

    for (int s = 0; s < b.setting_count(); ++s) {
        const auto st = b.unpack_settings(s);
        for (int o = 0; o < b.outcome_count(); ++o) {
            const auto ot = b.unpack_outcomes(o);
            StateVector phi = m.state;
            for (int p = 0; p < n; ++p)
                phi = apply_one_qubit(phi, n, p, projector(m.observables[p][st[p]], ot[p]));
            double prob = m.state.inner(phi).real();
            if (prob < 0.0) {
                if (prob < -1e-14) throw WrongShape("negative probability beyond tolerance");
                prob = 0.0;
            }
            b.table[s][o] = prob;
        }
    }
    return b;
}

/// Projects one party of the state onto an outcome and renormalizes.
/// Returns the branch probability and the post-measurement state; a
/// measure-zero branch returns probability 0 and leaves the state untouched.
inline std::pair<double, StateVector> project_party(const StateVector& state, int n_qubits, int party,
                                                    const Observable& o, int outcome) {
    StateVector phi = apply_one_qubit(state, n_qubits, party, projector(o, outcome));
    const double prob = phi.squared_norm();
    if (prob < 1e-28) return {0.0, state};
    const double inv = 1.0 / std::sqrt(prob);
    for (int i = 0; i < phi.dimension(); ++i) phi[i] = phi[i] * inv;
    return {prob, phi};
}

/// GHZ state (|0...0> + |1...1>)/sqrt(2) with every party measuring sigma_z in
/// both settings. Under these measurements all parties obtain equal results.
inline QuantumModel ghz_model(int parties) {
    QuantumModel m;
    m.state = StateVector(1 << parties);
    const double s = 1.0 / std::sqrt(2.0);
    m.state[0] = s;
    m.state[(1 << parties) - 1] = s;
    m.observables.resize(parties);
    for (int p = 0; p < parties; ++p) {
        m.observables[p].push_back({pauli_z(), "Z" + std::to_string(p) + ".0"});
        m.observables[p].push_back({pauli_z(), "Z" + std::to_string(p) + ".1"});
    }
    return m;
}

/// The 4-qubit witness model: the state and two-setting observables whose
/// behavior violates the 23-term inequality bound of 7 (value about 7.2).
///
/// Amplitudes (parties A,B,C,D; A is the leading bit):
///   17/60 |0000> + 1/3 |0011> - 1/sqrt(8) |0101> + 1/10 |0110>
///   + 1/4 |1000> - 1/2 |1011> - 1/3 |1101> + 1/2 |1110>
/// Settings, with U = cos(4pi/5) sigma_z - sin(4pi/5) sigma_x:
///   A0 = -U sigma_x U+, A1 = U sigma_z U+, B0 = H, B1 = -sigma_x H sigma_x,
///   C0 = sigma_z, C1 = -sigma_x, D0 = -sigma_z, D1 = -sigma_x.
inline QuantumModel witness_model() {
    QuantumModel m;
    m.state = StateVector(16);
    m.state[0b0000] = 17.0 / 60.0;
    m.state[0b0011] = 1.0 / 3.0;
    m.state[0b0101] = -1.0 / std::sqrt(8.0);
    m.state[0b0110] = 1.0 / 10.0;
    m.state[0b1000] = 1.0 / 4.0;
    m.state[0b1011] = -1.0 / 2.0;
    m.state[0b1101] = -1.0 / 3.0;
    m.state[0b1110] = 1.0 / 2.0;

    const auto sx = pauli_x();
    const auto sz = pauli_z();
    const double theta = 4.0 * M_PI / 5.0;
    const ComplexMatrix u = Complex(std::cos(theta)) * sz - Complex(std::sin(theta)) * sx;

    m.observables = {
        {{-(u * sx * u.adjoint()), "A0"}, {u * sz * u.adjoint(), "A1"}},
        {{hadamard(), "B0"}, {-(sx * hadamard() * sx), "B1"}},
        {{sz, "C0"}, {-sx, "C1"}},
        {{-sz, "D0"}, {-sx, "D1"}},
    };
    return m;
}

} // namespace vcausal
