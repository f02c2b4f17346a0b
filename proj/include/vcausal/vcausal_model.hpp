#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vcausal/behavior.hpp"
#include "vcausal/errors.hpp"
#include "vcausal/quantum.hpp"
#include "vcausal/spacetime.hpp"

namespace vcausal::model {

/// What a party sees of its influencing predecessors: parallel vectors of
/// party index (ascending), that party's setting, and its outcome.
struct Influences {
    std::vector<int> parties;
    std::vector<int> settings;
    std::vector<int> outcomes;

    std::optional<int> outcome_of(int party) const {
        for (std::size_t i = 0; i < parties.size(); ++i)
            if (parties[i] == party) return outcomes[i];
        return std::nullopt;
    }
    std::optional<int> setting_of(int party) const {
        for (std::size_t i = 0; i < parties.size(); ++i)
            if (parties[i] == party) return settings[i];
        return std::nullopt;
    }
};

/// Outcome distribution of one party given the shared variable, its own
/// setting, and the influences that reached it.
using Response = std::function<std::vector<double>(int lambda, int setting, const Influences&)>;

/// Finite-speed causal model: a shared classical variable (finite support)
/// plus direct influences along an acyclic pattern. Party i's outcome may
/// depend on lambda, its own setting, and the settings/outcomes of parties
/// with an edge into i.
struct VCausalModel {
    int parties = 0;
    std::vector<int> settings;  // choices per party
    std::vector<int> outcomes;  // outcomes per party
    std::vector<double> lambda_weights;
    std::vector<std::pair<int, int>> edges;  // influencer -> influenced
    std::vector<Response> response;          // one per party
};

namespace detail {

/// Kahn's algorithm; raises CyclicConnectivity if the edges loop.
inline std::vector<int> topological_order(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> indegree(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& [from, to] : edges) {
        if (from < 0 || from >= n || to < 0 || to >= n || from == to)
            throw InvalidConfig("influence edge endpoints out of range");
        out[from].push_back(to);
        ++indegree[to];
    }
    std::vector<int> order;
    std::vector<int> ready;
    for (int i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
        const int p = ready.front();
        ready.erase(ready.begin());
        order.push_back(p);
        for (int q : out[p])
            if (--indegree[q] == 0) ready.push_back(q);
    }
    if (static_cast<int>(order.size()) != n) throw CyclicConnectivity();
    return order;
}

} // namespace detail

/// Multiplies the model out into its behavior:
/// p(outcomes | settings) = sum_lambda w(lambda) * prod_i p_i(o_i | s_i, lambda, influences_i).
inline Behavior<double> behavior_of_model(const VCausalModel& m) {
    if (m.parties <= 0 || static_cast<int>(m.response.size()) != m.parties)
        throw InvalidConfig("model needs one response function per party");
    double wsum = 0.0;
    for (double w : m.lambda_weights) {
        if (w < 0.0) throw InvalidConfig("negative lambda weight");
        wsum += w;
    }
    if (m.lambda_weights.empty() || std::abs(wsum - 1.0) > 1e-9)
        throw InvalidConfig("lambda weights must sum to 1");
    detail::topological_order(m.parties, m.edges);

    std::vector<std::vector<int>> predecessors(m.parties);
    for (const auto& [from, to] : m.edges) predecessors[to].push_back(from);
    for (auto& p : predecessors) std::sort(p.begin(), p.end());

    Behavior<double> b(m.settings, m.outcomes);
    for (int s = 0; s < b.setting_count(); ++s) {
        const auto st = b.unpack_settings(s);
        for (int o = 0; o < b.outcome_count(); ++o) {
            const auto ot = b.unpack_outcomes(o);
            double total = 0.0;
            for (std::size_t l = 0; l < m.lambda_weights.size(); ++l) {
                double prod = m.lambda_weights[l];
                for (int p = 0; p < m.parties && prod != 0.0; ++p) {
                    Influences seen;
                    for (int q : predecessors[p]) {
                        seen.parties.push_back(q);
                        seen.settings.push_back(st[q]);
                        seen.outcomes.push_back(ot[q]);
                    }
                    const auto dist = m.response[p](static_cast<int>(l), st[p], seen);
                    if (static_cast<int>(dist.size()) != m.outcomes[p])
                        throw InvalidConfig("response of party " + std::to_string(p) +
                                            " has the wrong number of outcomes");
                    prod *= dist[ot[p]];
                }
                total += prod;
            }
            b.table[s][o] = total;
        }
    }
    for (int s = 0; s < b.setting_count(); ++s) {
        double block = 0.0;
        for (int o = 0; o < b.outcome_count(); ++o) {
            if (b.table[s][o] < -1e-12) throw InvalidConfig("response produced a negative probability");
            block += b.table[s][o];
        }
        if (std::abs(block - 1.0) > 1e-9)
            throw InvalidConfig("responses are not normalized in setting block " + std::to_string(s));
    }
    return b;
}

/// Three parties A, B, C sharing a GHZ-type resource, influences A -> B and
/// A -> C only. A's setting 0 means "measure early" (the influence carrying
/// (x, a) reaches both receivers), setting 1 means the influence does not
/// arrive in time; B and C then answer uniformly. Perfectly correlates b = c
/// when A measures early, leaves them independent otherwise - a signalling
/// behavior.
inline VCausalModel ghz_triangle_dc() {
    VCausalModel m;
    m.parties = 3;
    m.settings = {2, 1, 1};
    m.outcomes = {2, 2, 2};
    m.lambda_weights = {1.0};
    m.edges = {{0, 1}, {0, 2}};
    auto uniform = std::vector<double>{0.5, 0.5};
    m.response.resize(3);
    m.response[0] = [uniform](int, int, const Influences&) { return uniform; };
    auto follow_a = [uniform](int, int, const Influences& seen) {
        if (seen.setting_of(0) == 0) {
            const int a = *seen.outcome_of(0);
            std::vector<double> dist{0.0, 0.0};
            dist[a] = 1.0;
            return dist;
        }
        return uniform;
    };
    m.response[1] = follow_a;
    m.response[2] = follow_a;
    return m;
}

/// Same triangle with a shared uniform bit r: every party outputs r unless an
/// influence overrides it. Outcomes a = b = c always, so the behavior carries
/// no signalling in this scenario.
inline VCausalModel ghz_triangle_shared_bit() {
    VCausalModel m = ghz_triangle_dc();
    m.lambda_weights = {0.5, 0.5};
    auto output_r = [](int lambda, int, const Influences&) {
        std::vector<double> dist{0.0, 0.0};
        dist[lambda] = 1.0;
        return dist;
    };
    auto follow_a_or_r = [](int lambda, int, const Influences& seen) {
        std::vector<double> dist{0.0, 0.0};
        if (seen.setting_of(0) == 0)
            dist[*seen.outcome_of(0)] = 1.0;
        else
            dist[lambda] = 1.0;
        return dist;
    };
    m.response[0] = output_r;
    m.response[1] = follow_a_or_r;
    m.response[2] = follow_a_or_r;
    return m;
}

/// Pure direct-cause behavior of a 4-party quantum model with influence order
/// A -> D -> {B, C}: outcomes are produced by sequential projective state
/// update, except that B and C are both conditioned on (x, a, w, d) only -
/// each updates the post-A, post-D state independently, never seeing the
/// other. The ABD and ACD marginals of the result equal the quantum ones;
/// only BC-crossing correlations differ.
inline Behavior<double> sequential_dc_behavior(const QuantumModel& m) {
    if (m.parties() != 4) throw WrongShape("expected a 4-party quantum model");
    Behavior<double> b = Behavior<double>::all_binary(4);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                for (int w = 0; w < 2; ++w) {
                    const int s = b.pack_settings({x, y, z, w});
                    for (int a = 0; a < 2; ++a)
                        for (int d = 0; d < 2; ++d) {
                            auto [pa, after_a] = project_party(m.state, 4, 0, m.observables[0][x], a);
                            if (pa <= 0.0) {
                                // measure-zero history: uniform conditionals
                                for (int ob = 0; ob < 2; ++ob)
                                    for (int oc = 0; oc < 2; ++oc)
                                        b.table[s][b.pack_outcomes({a, ob, oc, d})] = 0.0;
                                continue;
                            }
                            auto [pd, after_d] = project_party(after_a, 4, 3, m.observables[3][w], d);
                            if (pd <= 0.0) {
                                for (int ob = 0; ob < 2; ++ob)
                                    for (int oc = 0; oc < 2; ++oc)
                                        b.table[s][b.pack_outcomes({a, ob, oc, d})] = 0.0;
                                continue;
                            }
                            double pb[2], pc[2];
                            for (int o = 0; o < 2; ++o) {
                                pb[o] = project_party(after_d, 4, 1, m.observables[1][y], o).first;
                                pc[o] = project_party(after_d, 4, 2, m.observables[2][z], o).first;
                            }
                            for (int ob = 0; ob < 2; ++ob)
                                for (int oc = 0; oc < 2; ++oc)
                                    b.table[s][b.pack_outcomes({a, ob, oc, d})] =
                                        pa * pd * pb[ob] * pc[oc];
                        }
                }
    return b;
}

/// One run of the superluminal-messaging protocol, plus the exact analytic
/// rates it converges to.
struct ProtocolResult {
    int rounds = 0;
    long trials = 0;
    bool message_yes = false;
    long wrong = 0;
    double empirical_error_rate = 0.0;
    double analytic_error_rate = 0.0;   // 0 for "yes", (1/2)^rounds for "no"
    double success_probability = 0.0;   // empirical, 1 - error rate
    double one_round_uniform_success = 0.75;  // uniform prior, single round
    std::optional<double> effective_speed;    // filled in from geometry when known
};

/// Monte Carlo simulation of the triangle messaging protocol under the pure
/// direct-cause model. To send "yes" Alice measures early, so every round has
/// b = c; to send "no" she does not, leaving b and c independent coin flips.
/// The receiver declares "yes" iff the outcomes agree in every round.
inline ProtocolResult ghz_protocol(int rounds, bool message_yes, std::uint64_t seed, long trials = 100000) {
    if (rounds < 1) throw InvalidConfig("protocol needs at least one round");
    if (trials < 1) throw InvalidConfig("protocol needs at least one trial");
    std::mt19937_64 rng(seed);
    auto coin = [&rng]() { return static_cast<int>(rng() & 1u); };
    ProtocolResult result;
    result.rounds = rounds;
    result.trials = trials;
    result.message_yes = message_yes;
    for (long t = 0; t < trials; ++t) {
        bool all_equal = true;
        for (int r = 0; r < rounds; ++r) {
            int b, c;
            if (message_yes) {
                b = c = coin();  // influence carries a; both repeat it
            } else {
                b = coin();
                c = coin();
            }
            if (b != c) all_equal = false;
        }
        const bool declared_yes = all_equal;
        if (declared_yes != message_yes) ++result.wrong;
    }
    result.empirical_error_rate = static_cast<double>(result.wrong) / static_cast<double>(trials);
    result.analytic_error_rate = message_yes ? 0.0 : std::pow(0.5, rounds);
    result.success_probability = 1.0 - result.empirical_error_rate;
    return result;
}

/// End-to-end message speed of the protocol over a concrete geometry: the
/// influence leaves A's choice event, the receiving parties report their
/// outcomes classically at `report_speed`, and decoding happens where the
/// reports meet (an event labeled "decoder" if present, else the centroid of
/// the reporters). Returns distance(A -> decoding point) / elapsed time.
inline double signalling_speed(const spacetime::VConeConfig& cfg,
                               double report_speed = spacetime::kSpeedOfLight) {
    cfg.require_valid();
    if (!(report_speed > 0.0)) throw InvalidConfig("report speed must be positive");
    const spacetime::Event& a = cfg.event("A");
    std::vector<const spacetime::Event*> reporters;
    const spacetime::Event* decoder = nullptr;
    for (const auto& e : cfg.events) {
        if (e.label == "A") continue;
        if (e.label == "decoder") {
            decoder = &e;
            continue;
        }
        reporters.push_back(&e);
    }
    if (reporters.empty()) throw InvalidConfig("no receiving parties in the configuration");
    std::array<double, 3> where{0.0, 0.0, 0.0};
    if (decoder) {
        where = decoder->r;
    } else {
        for (const auto* e : reporters)
            for (int i = 0; i < 3; ++i) where[i] += e->r[i] / static_cast<double>(reporters.size());
    }
    const spacetime::Event meet(0.0, where);
    double t_decode = a.t;
    for (const auto* e : reporters) {
        if (!spacetime::v_connected(a, *e, cfg.v))
            throw InvalidConfig("influence from A does not reach " + e->label);
        t_decode = std::max(t_decode, e->t + spacetime::distance(*e, meet) / report_speed);
    }
    const double dist = spacetime::distance(a, meet);
    const double elapsed = t_decode - a.t;
    if (!(elapsed > 0.0)) throw InvalidConfig("decoding does not happen after A's choice");
    return dist / elapsed;
}

} // namespace vcausal::model
