#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "vcausal/errors.hpp"
#include "vcausal/rational.hpp"

namespace vcausal {

/// n-party conditional probability distribution p(outcomes | settings).
///
/// The table is indexed by a packed setting tuple and, inside each block, a
/// packed outcome tuple. Both packings are row-major with party 0 most
/// significant. The scalar type is double for the quantum kernel and Rational
/// for the certifier; the operations below are generic over both.
template <class T>
struct Behavior {
    int parties = 0;
    std::vector<int> settings;  // choices per party
    std::vector<int> outcomes;  // outcomes per party
    std::vector<std::vector<T>> table;  // [setting index][outcome index]

    Behavior() = default;
    Behavior(std::vector<int> settings_, std::vector<int> outcomes_)
        : parties(static_cast<int>(settings_.size())),
          settings(std::move(settings_)),
          outcomes(std::move(outcomes_)) {
        table.assign(setting_count(), std::vector<T>(outcome_count(), T(0)));
    }

    /// All parties binary-in binary-out.
    static Behavior all_binary(int n) {
        return Behavior(std::vector<int>(n, 2), std::vector<int>(n, 2));
    }

    int setting_count() const {
        return std::accumulate(settings.begin(), settings.end(), 1, std::multiplies<int>());
    }
    int outcome_count() const {
        return std::accumulate(outcomes.begin(), outcomes.end(), 1, std::multiplies<int>());
    }

    int pack_settings(const std::vector<int>& s) const { return pack(s, settings); }
    int pack_outcomes(const std::vector<int>& o) const { return pack(o, outcomes); }
    std::vector<int> unpack_settings(int idx) const { return unpack(idx, settings); }
    std::vector<int> unpack_outcomes(int idx) const { return unpack(idx, outcomes); }

    T& at(const std::vector<int>& s, const std::vector<int>& o) {
        return table[pack_settings(s)][pack_outcomes(o)];
    }
    const T& at(const std::vector<int>& s, const std::vector<int>& o) const {
        return table[pack_settings(s)][pack_outcomes(o)];
    }

    /// Nonnegative entries and unit block sums, within tol.
    bool is_normalized(const T& tol) const {
        for (const auto& block : table) {
            T sum(0);
            for (const auto& p : block) {
                if (p < -tol) return false;
                sum += p;
            }
            if (ScalarTraits<T>::abs(sum - T(1)) > tol) return false;
        }
        return true;
    }

    static int pack(const std::vector<int>& digits, const std::vector<int>& radix) {
        int idx = 0;
        for (std::size_t i = 0; i < radix.size(); ++i) idx = idx * radix[i] + digits[i];
        return idx;
    }
    static std::vector<int> unpack(int idx, const std::vector<int>& radix) {
        std::vector<int> digits(radix.size());
        for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
            digits[i] = idx % radix[i];
            idx /= radix[i];
        }
        return digits;
    }
};

/// Uniform behavior: every outcome equally likely in every block.
template <class T>
Behavior<T> uniform_behavior(int parties) {
    auto b = Behavior<T>::all_binary(parties);
    const T p = T(1) / T(b.outcome_count());
    for (auto& block : b.table) std::fill(block.begin(), block.end(), p);
    return b;
}

/// Deterministic local behavior from per-party response maps
/// strategy[party][setting] -> outcome.
template <class T>
Behavior<T> deterministic_behavior(const std::vector<std::vector<int>>& strategy) {
    auto b = Behavior<T>::all_binary(static_cast<int>(strategy.size()));
    for (int s = 0; s < b.setting_count(); ++s) {
        auto st = b.unpack_settings(s);
        std::vector<int> out(b.parties);
        for (int i = 0; i < b.parties; ++i) out[i] = strategy[i][st[i]];
        b.table[s][b.pack_outcomes(out)] = T(1);
    }
    return b;
}

/// The 2-party PR box family: b xor c = (y and z) xor (alpha and y) xor (beta and z) xor gamma,
/// uniform marginals. (alpha,beta,gamma) = (0,0,0) is the canonical box.
template <class T>
Behavior<T> pr_box(int alpha = 0, int beta = 0, int gamma = 0) {
    auto b = Behavior<T>::all_binary(2);
    const T half = T(1) / T(2);
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z)
            for (int o1 = 0; o1 < 2; ++o1)
                for (int o2 = 0; o2 < 2; ++o2)
                    if ((o1 ^ o2) == ((y & z) ^ (alpha & y) ^ (beta & z) ^ gamma))
                        b.at({y, z}, {o1, o2}) = half;
    return b;
}

/// Marginal of a party subset. The result keeps the full setting tuple of the
/// input so that any dependence on excluded parties' settings stays visible.
/// Entry [full setting index][packed subset outcome].
template <class T>
struct Marginal {
    std::vector<int> subset;          // ascending party indices
    std::vector<int> subset_outcomes; // radix of the kept parties
    std::vector<std::vector<T>> table;
};

template <class T>
Marginal<T> marginal(const Behavior<T>& b, std::vector<int> subset) {
    if (subset.empty()) throw EmptySubset();
    std::sort(subset.begin(), subset.end());
    Marginal<T> m;
    m.subset = subset;
    for (int p : subset) m.subset_outcomes.push_back(b.outcomes[p]);
    m.table.assign(b.setting_count(), std::vector<T>(
        std::accumulate(m.subset_outcomes.begin(), m.subset_outcomes.end(), 1, std::multiplies<int>()), T(0)));
    for (int s = 0; s < b.setting_count(); ++s) {
        for (int o = 0; o < b.outcome_count(); ++o) {
            auto ot = b.unpack_outcomes(o);
            std::vector<int> kept;
            kept.reserve(subset.size());
            for (int p : subset) kept.push_back(ot[p]);
            m.table[s][Behavior<T>::pack(kept, m.subset_outcomes)] += b.table[s][o];
        }
    }
    return m;
}

/// Marginal repackaged as a behavior of the kept parties alone. The dropped
/// parties' settings must not matter: every choice is compared against the
/// all-zero representative and a deviation beyond tol raises
/// SignallingAmbiguity.
template <class T>
Behavior<T> marginal_behavior(const Behavior<T>& b, std::vector<int> subset, const T& tol) {
    const Marginal<T> m = marginal(b, subset);
    std::vector<int> sub_settings, sub_outcomes;
    for (int p : m.subset) {
        sub_settings.push_back(b.settings[p]);
        sub_outcomes.push_back(b.outcomes[p]);
    }
    Behavior<T> out(sub_settings, sub_outcomes);
    for (int s = 0; s < b.setting_count(); ++s) {
        auto st = b.unpack_settings(s);
        std::vector<int> kept;
        bool representative = true;
        for (int p = 0, k = 0; p < b.parties; ++p) {
            if (k < static_cast<int>(m.subset.size()) && m.subset[k] == p) {
                kept.push_back(st[p]);
                ++k;
            } else if (st[p] != 0) {
                representative = false;
            }
        }
        const int rs = out.pack_settings(kept);
        for (std::size_t o = 0; o < m.table[s].size(); ++o) {
            if (representative)
                out.table[rs][o] = m.table[s][o];
            else if (ScalarTraits<T>::abs(m.table[s][o] - out.table[rs][o]) > tol)
                throw SignallingAmbiguity("marginal of the kept parties depends on a dropped party's setting");
        }
    }
    return out;
}

/// One signalling finding: the marginal of `receivers` varies with
/// `influencer`'s setting by `variation` (total-variation distance), maximized
/// over all setting contexts.
template <class T>
struct SignallingEntry {
    std::vector<int> receivers;
    int influencer = -1;
    T variation{0};
};

template <class T>
struct SignallingReport {
    std::vector<SignallingEntry<T>> entries;
    bool empty() const { return entries.empty(); }

    std::string to_string() const {
        std::ostringstream os;
        for (const auto& e : entries) {
            os << "marginal {";
            for (std::size_t i = 0; i < e.receivers.size(); ++i)
                os << (i ? "," : "") << e.receivers[i];
            os << "} depends on setting of party " << e.influencer
               << " (variation " << ScalarTraits<T>::as_double(e.variation) << ")\n";
        }
        return os.str();
    }
};

/// Checks every proper party subset against every outside party: does the
/// subset's outcome marginal move when the outside party's setting changes,
/// all other settings held fixed? Entries above tol are reported.
template <class T>
SignallingReport<T> no_signalling_check(const Behavior<T>& b, const T& tol) {
    SignallingReport<T> report;
    const int n = b.parties;
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
        std::vector<int> subset;
        for (int p = 0; p < n; ++p)
            if (mask & (1 << p)) subset.push_back(p);
        auto marg = marginal(b, subset);
        for (int j = 0; j < n; ++j) {
            if (mask & (1 << j)) continue;
            T worst(0);
            for (int s = 0; s < b.setting_count(); ++s) {
                auto st = b.unpack_settings(s);
                if (st[j] != 0) continue;  // compare against each alternative below
                for (int xj = 1; xj < b.settings[j]; ++xj) {
                    auto st2 = st;
                    st2[j] = xj;
                    const int s2 = b.pack_settings(st2);
                    T tv(0);
                    for (std::size_t o = 0; o < marg.table[s].size(); ++o)
                        tv += ScalarTraits<T>::abs(marg.table[s][o] - marg.table[s2][o]);
                    tv /= T(2);
                    worst = std::max(worst, tv);
                }
            }
            if (worst > tol) report.entries.push_back({subset, j, worst});
        }
    }
    return report;
}

template <class T>
bool is_no_signalling(const Behavior<T>& b, const T& tol) {
    return no_signalling_check(b, tol).empty();
}

/// One fixed party in a conditioning assignment.
struct FixedParty {
    int party;
    int setting;
    int outcome;
};

/// Bayes-conditions on the given parties' settings and outcomes, returning the
/// behavior of the remaining parties. Each remaining-setting block is
/// renormalized by its own conditioning mass; a block with zero mass raises
/// ZeroProbabilityCondition.
template <class T>
Behavior<T> condition(const Behavior<T>& b, const std::vector<FixedParty>& fixed) {
    std::vector<int> fixed_mark(b.parties, -1);
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        if (fixed[i].party < 0 || fixed[i].party >= b.parties || fixed_mark[fixed[i].party] >= 0)
            throw DuplicateParty("bad conditioning assignment");
        fixed_mark[fixed[i].party] = static_cast<int>(i);
    }
    std::vector<int> rest;
    for (int p = 0; p < b.parties; ++p)
        if (fixed_mark[p] < 0) rest.push_back(p);
    if (rest.empty()) throw EmptySubset("conditioning fixes every party");

    std::vector<int> rest_settings, rest_outcomes;
    for (int p : rest) {
        rest_settings.push_back(b.settings[p]);
        rest_outcomes.push_back(b.outcomes[p]);
    }
    Behavior<T> out(rest_settings, rest_outcomes);

    for (int rs = 0; rs < out.setting_count(); ++rs) {
        auto rst = out.unpack_settings(rs);
        std::vector<int> full_s(b.parties);
        for (std::size_t i = 0; i < rest.size(); ++i) full_s[rest[i]] = rst[i];
        for (const auto& f : fixed) full_s[f.party] = f.setting;
        const int s = b.pack_settings(full_s);

        T mass(0);
        for (int ro = 0; ro < out.outcome_count(); ++ro) {
            auto rot = out.unpack_outcomes(ro);
            std::vector<int> full_o(b.parties);
            for (std::size_t i = 0; i < rest.size(); ++i) full_o[rest[i]] = rot[i];
            for (const auto& f : fixed) full_o[f.party] = f.outcome;
            out.table[rs][ro] = b.table[s][b.pack_outcomes(full_o)];
            mass += out.table[rs][ro];
        }
        if (mass <= T(0))
            throw ZeroProbabilityCondition("conditioning mass is zero in setting block " + std::to_string(rs));
        for (auto& p : out.table[rs]) p /= mass;
    }
    return out;
}

/// Converts the scalar type entrywise (double -> Rational is exact binary
/// conversion; Rational -> double rounds).
template <class To, class From>
Behavior<To> convert_behavior(const Behavior<From>& b) {
    Behavior<To> out;
    out.parties = b.parties;
    out.settings = b.settings;
    out.outcomes = b.outcomes;
    out.table.resize(b.table.size());
    for (std::size_t s = 0; s < b.table.size(); ++s) {
        out.table[s].reserve(b.table[s].size());
        for (const auto& p : b.table[s]) {
            if constexpr (std::is_same_v<To, double>)
                out.table[s].push_back(ScalarTraits<From>::as_double(p));
            else
                out.table[s].push_back(To(p));
        }
    }
    return out;
}

} // namespace vcausal
