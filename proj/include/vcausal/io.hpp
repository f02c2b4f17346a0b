#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vcausal/behavior.hpp"
#include "vcausal/errors.hpp"
#include "vcausal/rational.hpp"
#include "vcausal/simplex.hpp"
#include "vcausal/spacetime.hpp"
#include "vcausal/vcausal_model.hpp"

namespace vcausal::io {

using nlohmann::json;

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << content;
}

/// 64-bit FNV-1a, used to fingerprint inputs and linear programs in reports.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xf];
    return out;
}

inline json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid structure in " + what);
    return j;
}

namespace detail {

template <class T>
T probability_from_json(const json& entry, const std::string& where) {
    if (entry.is_string()) {
        try {
            const Rational q = parse_rational(entry.get<std::string>());
            if constexpr (std::is_same_v<T, double>)
                return to_double(q);
            else
                return q;
        } catch (const Error& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (entry.is_number()) {
        const double v = entry.get<double>();
        if constexpr (std::is_same_v<T, double>)
            return v;
        else
            return rational_from_double(v);
    }
    throw ParseError(where + ": expected a number or a fraction string");
}

inline std::vector<int> parse_index_tuple(const std::string& key, int count, const std::string& where) {
    std::vector<int> out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ','))
        try {
            out.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw ParseError(where + ": bad index '" + part + "'");
        }
    if (static_cast<int>(out.size()) != count)
        throw ParseError(where + ": expected " + std::to_string(count) + " comma-joined indices");
    return out;
}

inline std::string join_indices(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace detail

/// Behavior document: `parties`, `settings`, `outcomes`, and `table` keyed by
/// comma-joined setting tuples. Rational tables serialize as "p/q" strings
/// (bit-exact round trip); double tables as JSON numbers.
template <class T>
json behavior_to_json(const Behavior<T>& b) {
    json j;
    j["parties"] = b.parties;
    j["settings"] = b.settings;
    j["outcomes"] = b.outcomes;
    json table = json::object();
    for (int s = 0; s < b.setting_count(); ++s) {
        json row = json::array();
        for (const auto& p : b.table[s]) {
            if constexpr (ScalarTraits<T>::exact)
                row.push_back(to_fraction_string(p));
            else
                row.push_back(p);
        }
        table[detail::join_indices(b.unpack_settings(s))] = std::move(row);
    }
    j["table"] = std::move(table);
    return j;
}

template <class T>
Behavior<T> behavior_from_json(const json& j) {
    for (const char* field : {"parties", "settings", "outcomes", "table"})
        if (!j.contains(field)) throw ParseError(std::string("behavior document lacks '") + field + "'");
    Behavior<T> b;
    try {
        b = Behavior<T>(j.at("settings").get<std::vector<int>>(), j.at("outcomes").get<std::vector<int>>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("behavior document: ") + e.what());
    }
    if (j.at("parties").get<int>() != b.parties)
        throw ParseError("behavior document: 'parties' disagrees with 'settings' length");
    for (int p = 0; p < b.parties; ++p)
        if (b.settings[p] < 1 || b.outcomes[p] < 1)
            throw ParseError("behavior document: settings/outcomes must be positive");
    const json& table = j.at("table");
    if (!table.is_object()) throw ParseError("behavior document: 'table' must map setting tuples to arrays");
    std::vector<bool> seen(b.setting_count(), false);
    for (const auto& [key, row] : table.items()) {
        const std::string where = "table['" + key + "']";
        const auto st = detail::parse_index_tuple(key, b.parties, where);
        for (int p = 0; p < b.parties; ++p)
            if (st[p] < 0 || st[p] >= b.settings[p]) throw ParseError(where + ": setting out of range");
        const int s = b.pack_settings(st);
        if (seen[s]) throw ParseError(where + ": duplicate setting tuple");
        seen[s] = true;
        if (!row.is_array() || static_cast<int>(row.size()) != b.outcome_count())
            throw ParseError(where + ": expected " + std::to_string(b.outcome_count()) + " probabilities");
        for (int o = 0; o < b.outcome_count(); ++o)
            b.table[s][o] = detail::probability_from_json<T>(row[o], where + "[" + std::to_string(o) + "]");
    }
    for (int s = 0; s < b.setting_count(); ++s)
        if (!seen[s])
            throw ParseError("behavior document: missing setting tuple '" +
                             detail::join_indices(b.unpack_settings(s)) + "'");
    return b;
}

template <class T>
void save_behavior(const std::string& path, const Behavior<T>& b) {
    write_text_file(path, behavior_to_json(b).dump(2) + "\n");
}

template <class T>
Behavior<T> load_behavior(const std::string& path) {
    return behavior_from_json<T>(parse_json(read_text_file(path), "behavior file '" + path + "'"));
}

/// Space-time configuration document: influence speed (`v` in m/s or
/// `v_over_c`), labeled `events` with `t` and up-to-3-component `r`, and the
/// required connectivity `links`.
inline json config_to_json(const spacetime::VConeConfig& cfg) {
    json j;
    j["v_over_c"] = cfg.v / spacetime::kSpeedOfLight;
    json events = json::array();
    for (const auto& e : cfg.events)
        events.push_back({{"label", e.label}, {"t", e.t}, {"r", {e.r[0], e.r[1], e.r[2]}}});
    j["events"] = std::move(events);
    json links = json::array();
    for (const auto& l : cfg.links)
        links.push_back({{"earlier", l.earlier}, {"later", l.later}, {"connected", l.connected}});
    j["links"] = std::move(links);
    return j;
}

inline spacetime::VConeConfig config_from_json(const json& j) {
    double v = 0.0;
    if (j.contains("v") == j.contains("v_over_c"))
        throw ParseError("config document needs exactly one of 'v' (m/s) or 'v_over_c'");
    try {
        v = j.contains("v") ? j.at("v").get<double>()
                            : j.at("v_over_c").get<double>() * spacetime::kSpeedOfLight;
        std::vector<spacetime::Event> events;
        for (const auto& e : j.at("events")) {
            std::array<double, 3> r{0.0, 0.0, 0.0};
            if (e.contains("r")) {
                const auto& rr = e.at("r");
                if (!rr.is_array() || rr.size() > 3)
                    throw ParseError("event 'r' must be an array of up to 3 components");
                for (std::size_t i = 0; i < rr.size(); ++i) r[i] = rr[i].get<double>();
            }
            events.emplace_back(e.at("t").get<double>(), r, e.value("label", std::string{}));
        }
        std::vector<spacetime::Link> links;
        if (j.contains("links"))
            for (const auto& l : j.at("links"))
                links.push_back({l.at("earlier").get<std::string>(), l.at("later").get<std::string>(),
                                 l.value("connected", true)});
        return spacetime::VConeConfig(v, std::move(events), std::move(links));
    } catch (const json::exception& e) {
        throw ParseError(std::string("config document: ") + e.what());
    }
}

inline spacetime::VConeConfig load_config(const std::string& path) {
    return config_from_json(parse_json(read_text_file(path), "config file '" + path + "'"));
}

inline void save_config(const std::string& path, const spacetime::VConeConfig& cfg) {
    write_text_file(path, config_to_json(cfg).dump(2) + "\n");
}

/// Serializable causal model: response functions as explicit tables keyed by
/// "lambda|setting|pred-settings|pred-outcomes" (predecessors in ascending
/// party order, comma-joined, empty when the party has none). Histories
/// absent from the table answer uniformly, matching the measure-zero-branch
/// convention.
struct TableModel {
    int parties = 0;
    std::vector<int> settings;
    std::vector<int> outcomes;
    std::vector<double> lambda_weights;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::map<std::string, std::vector<double>>> tables;  // one per party

    static std::string key(int lambda, int setting, const model::Influences& seen) {
        return std::to_string(lambda) + "|" + std::to_string(setting) + "|" +
               detail::join_indices(seen.settings) + "|" + detail::join_indices(seen.outcomes);
    }

    /// Instantiates the response closures over shared copies of the tables.
    model::VCausalModel compile() const {
        model::VCausalModel m;
        m.parties = parties;
        m.settings = settings;
        m.outcomes = outcomes;
        m.lambda_weights = lambda_weights;
        m.edges = edges;
        for (int p = 0; p < parties; ++p) {
            auto table = std::make_shared<std::map<std::string, std::vector<double>>>(tables[p]);
            const int n_out = outcomes[p];
            m.response.push_back([table, n_out](int lambda, int setting, const model::Influences& seen) {
                const auto it = table->find(key(lambda, setting, seen));
                if (it == table->end())
                    return std::vector<double>(n_out, 1.0 / n_out);
                return it->second;
            });
        }
        return m;
    }
};

inline json model_to_json(const TableModel& m) {
    json j;
    j["parties"] = m.parties;
    j["settings"] = m.settings;
    j["outcomes"] = m.outcomes;
    j["lambda_weights"] = m.lambda_weights;
    json edges = json::array();
    for (const auto& [from, to] : m.edges) edges.push_back({from, to});
    j["edges"] = std::move(edges);
    json responses = json::array();
    for (const auto& table : m.tables) {
        json t = json::object();
        for (const auto& [k, dist] : table) t[k] = dist;
        responses.push_back(std::move(t));
    }
    j["responses"] = std::move(responses);
    return j;
}

inline TableModel model_from_json(const json& j) {
    TableModel m;
    try {
        m.parties = j.at("parties").get<int>();
        m.settings = j.at("settings").get<std::vector<int>>();
        m.outcomes = j.at("outcomes").get<std::vector<int>>();
        m.lambda_weights = j.at("lambda_weights").get<std::vector<double>>();
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("model edge must be [from, to]");
            m.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        const auto& responses = j.at("responses");
        if (static_cast<int>(responses.size()) != m.parties)
            throw ParseError("model document needs one response table per party");
        for (const auto& table : responses) {
            std::map<std::string, std::vector<double>> t;
            for (const auto& [k, dist] : table.items()) t[k] = dist.get<std::vector<double>>();
            m.tables.push_back(std::move(t));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("model document: ") + e.what());
    }
    if (static_cast<int>(m.settings.size()) != m.parties ||
        static_cast<int>(m.outcomes.size()) != m.parties)
        throw ParseError("model document: per-party lists disagree with 'parties'");
    return m;
}

inline TableModel load_model(const std::string& path) {
    return model_from_json(parse_json(read_text_file(path), "model file '" + path + "'"));
}

/// Canonical fingerprint of a linear program, stored in certificate files so
/// a verifier can refuse certificates for a different program.
inline std::uint64_t lp_digest(const lp::LinearProgram& p) {
    std::string s = "vars=" + std::to_string(p.num_vars) + ";obj=";
    for (const auto& c : p.objective) s += to_fraction_string(c) + ",";
    for (const auto& row : p.rows) {
        s += row.rel == lp::Relation::Eq ? ";eq:" : ";le:";
        for (const auto& c : row.coeff) s += to_fraction_string(c) + ",";
        s += "=" + to_fraction_string(row.rhs);
    }
    return fnv1a64(s);
}

struct CertificateFile {
    lp::Certificate certificate;
    std::uint64_t program_digest = 0;
    int num_vars = 0;
    int rows = 0;
};

inline json certificate_to_json(const lp::Certificate& cert, const lp::LinearProgram& program) {
    auto fractions = [](const std::vector<Rational>& v) {
        json arr = json::array();
        for (const auto& q : v) arr.push_back(to_fraction_string(q));
        return arr;
    };
    json j;
    j["kind"] = cert.kind == lp::Certificate::Kind::Optimal ? "optimal" : "infeasible";
    if (cert.kind == lp::Certificate::Kind::Optimal) {
        j["objective"] = to_fraction_string(cert.objective);
        j["primal"] = fractions(cert.primal);
        j["dual"] = fractions(cert.dual);
    } else {
        j["farkas"] = fractions(cert.farkas);
    }
    j["program"] = {{"digest", hex64(lp_digest(program))},
                    {"num_vars", program.num_vars},
                    {"rows", program.rows.size()}};
    return j;
}

inline CertificateFile certificate_from_json(const json& j) {
    auto fractions = [](const json& arr, const char* what) {
        if (!arr.is_array()) throw ParseError(std::string("certificate '") + what + "' must be an array");
        std::vector<Rational> out;
        out.reserve(arr.size());
        for (const auto& e : arr) out.push_back(parse_rational(e.get<std::string>()));
        return out;
    };
    CertificateFile f;
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "optimal") {
            f.certificate.kind = lp::Certificate::Kind::Optimal;
            f.certificate.objective = parse_rational(j.at("objective").get<std::string>());
            f.certificate.primal = fractions(j.at("primal"), "primal");
            f.certificate.dual = fractions(j.at("dual"), "dual");
        } else if (kind == "infeasible") {
            f.certificate.kind = lp::Certificate::Kind::Infeasible;
            f.certificate.farkas = fractions(j.at("farkas"), "farkas");
        } else {
            throw ParseError("certificate kind must be 'optimal' or 'infeasible'");
        }
        const auto& prog = j.at("program");
        f.program_digest = std::stoull(prog.at("digest").get<std::string>(), nullptr, 16);
        f.num_vars = prog.at("num_vars").get<int>();
        f.rows = prog.at("rows").get<int>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("certificate document: ") + e.what());
    }
    return f;
}

/// Quantum state document: `amplitudes` as [re, im] pairs, length a power of
/// two. Normalized on load (ParseError on a zero vector).
inline StateVector state_from_json(const json& j, int expected_dimension) {
    try {
        const auto& amps = j.at("amplitudes");
        if (!amps.is_array() || static_cast<int>(amps.size()) != expected_dimension)
            throw ParseError("state document: expected " + std::to_string(expected_dimension) +
                             " amplitude pairs");
        StateVector psi(expected_dimension);
        for (int i = 0; i < expected_dimension; ++i) {
            const auto& a = amps[i];
            if (a.is_number())
                psi[i] = std::complex<double>(a.get<double>(), 0.0);
            else if (a.is_array() && a.size() == 2)
                psi[i] = std::complex<double>(a[0].get<double>(), a[1].get<double>());
            else
                throw ParseError("state document: amplitude must be a number or [re, im]");
        }
        const double norm2 = psi.squared_norm();
        if (norm2 < 1e-30) throw ParseError("state document: zero state vector");
        psi.normalize();
        return psi;
    } catch (const json::exception& e) {
        throw ParseError(std::string("state document: ") + e.what());
    }
}

inline StateVector load_state(const std::string& path, int expected_dimension) {
    return state_from_json(parse_json(read_text_file(path), "state file '" + path + "'"),
                           expected_dimension);
}

} // namespace vcausal::io
