// Command-line driver: reproducible experiments over the library's modules.
//
// Subcommands: quantum-s, certify-bound, check-behavior, ghz-protocol,
// speed-bound, validate-config. Global flags: --tol, --seed, --rational.
// Exit codes: 0 claims verified, 1 claims falsified, 2 usage or input error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcausal/vcausal.hpp"

namespace {

using namespace vcausal;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Streams one command's report: tagged quantities, pass/fail claims,
/// provenance digests, wall time. finish() yields the exit code.
class Report {
public:
    explicit Report(std::string command)
        : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {
        std::cout << "== " << command_ << " ==\n";
    }

    void input(const std::string& path, const std::string& bytes) {
        std::cout << "input " << path << " digest fnv1a:" << io::hex64(io::fnv1a64(bytes)) << "\n";
    }

    void quantity(const char* module, const std::string& line) {
        std::cout << "[" << module << "] " << line << "\n";
    }

    void claim(bool ok, const std::string& what) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
        if (!ok) failed_ = true;
    }

    int finish() {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
        std::cout << "wall time: " << ms << " ms\n";
        return failed_ ? 1 : 0;
    }

private:
    std::string command_;
    std::chrono::steady_clock::time_point start_;
    bool failed_ = false;
};

struct GlobalFlags {
    double tol = 1e-9;
    std::uint64_t seed = 1;
    bool rational = false;

    Rational tol_rational() const { return rational_from_double(tol); }
};

// ---------------------------------------------------------------- quantum-s

int cmd_quantum_s(const GlobalFlags& g, const std::string& state_file, const std::string& dump_path) {
    Report report("quantum-s");
    QuantumModel m = witness_model();
    if (!state_file.empty()) {
        const std::string bytes = io::read_text_file(state_file);
        report.input(state_file, bytes);
        m.state = io::state_from_json(io::parse_json(bytes, "state file '" + state_file + "'"),
                                      m.state.dimension());
    }
    m.validate();

    const auto& ineq = hidden_influence_inequality();
    double s_ops = 0.0;
    for (const auto& term : ineq.terms) {
        const double e = expectation(m, term.factors);
        report.quantity("quantum", term.to_string() + " = " + fmt(e) +
                                       "  (coefficient " + to_fraction_string(term.coeff) + ")");
        s_ops += to_double(term.coeff) * e;
    }
    const Behavior<double> b = behavior_of(m);
    const double s_beh = evaluate_S(b, g.tol);
    report.quantity("quantum", "S (operator expectations) = " + fmt(s_ops));
    report.quantity("inequality", "S (behavior correlators) = " + fmt(s_beh));
    report.quantity("inequality", "causal bound = " + to_fraction_string(ineq.bound));

    if (!dump_path.empty()) {
        if (g.rational)
            io::save_behavior(dump_path, convert_behavior<Rational>(b));
        else
            io::save_behavior(dump_path, b);
        report.quantity("io", "behavior written to " + dump_path + (g.rational ? " (exact fractions)" : ""));
    }

    report.claim(s_beh > 7.0, "S exceeds the causal bound 7");
    report.claim(std::abs(s_ops - s_beh) <= 1e-10, "evaluation paths agree within 1e-10");
    return report.finish();
}

// ------------------------------------------------------------- certify-bound

int cmd_certify_bound(const GlobalFlags& g, bool ns_only, bool marginals_from_quantum,
                      double radius, const std::string& export_path, const std::string& verify_path) {
    Report report("certify-bound");

    if (marginals_from_quantum) {
        const auto bq = convert_behavior<Rational>(behavior_of(witness_model()));
        const Rational tol_r = g.tol_rational();
        const auto abd = marginal_behavior(bq, {0, 1, 3}, tol_r);
        const auto acd = marginal_behavior(bq, {0, 2, 3}, tol_r);
        const auto mp = certify::marginal_program(abd, acd, true);
        if (!verify_path.empty()) {
            const std::string bytes = io::read_text_file(verify_path);
            report.input(verify_path, bytes);
            const auto file = io::certificate_from_json(io::parse_json(bytes, "certificate"));
            report.claim(file.program_digest == io::lp_digest(mp.lp), "certificate matches this program");
            const auto check = lp::verify(mp.lp, file.certificate);
            report.claim(check.ok, "certificate verifies independently" +
                                       (check.ok ? std::string() : ": " + check.reason));
            report.claim(file.certificate.kind == lp::Certificate::Kind::Infeasible,
                         "certificate proves infeasibility");
            return report.finish();
        }
        const auto fr = certify::marginal_feasibility(abd, acd, true, tol_r,
                                                      rational_from_double(radius));
        report.quantity("certifier", std::string("marginal feasibility: ") +
                                         (fr.feasible ? "FEASIBLE" : "INFEASIBLE"));
        report.quantity("certifier", "pivots: " + std::to_string(fr.info.phase1_pivots) + " phase 1, " +
                                         std::to_string(fr.info.phase2_pivots) + " phase 2, " +
                                         std::to_string(fr.info.dropped_rows) + " redundant rows dropped");
        if (!fr.feasible) {
            report.quantity("certifier", "Farkas margin = " + fmt(to_double(fr.margin)) +
                                             ", perturbation allowance = " + fmt(to_double(fr.allowance)) +
                                             " (radius " + fmt(radius) + ")");
        }
        if (!export_path.empty()) {
            io::write_text_file(export_path,
                                io::certificate_to_json(fr.certificate, mp.lp).dump(2) + "\n");
            report.quantity("io", "certificate written to " + export_path);
        }
        report.claim(!fr.feasible, "no finite-speed joint matches the quantum ABD and ACD marginals");
        report.claim(fr.verified, "certificate verifies independently" +
                                      (fr.verified ? std::string() : ": " + fr.verify_reason));
        report.claim(fr.robust, "infeasibility robust to marginal perturbations within the radius");
        return report.finish();
    }

    const auto program = certify::bound_program(hidden_influence_inequality(), !ns_only);
    if (!verify_path.empty()) {
        const std::string bytes = io::read_text_file(verify_path);
        report.input(verify_path, bytes);
        const auto file = io::certificate_from_json(io::parse_json(bytes, "certificate"));
        report.claim(file.program_digest == io::lp_digest(program), "certificate matches this program");
        const auto check = lp::verify(program, file.certificate);
        report.claim(check.ok, "certificate verifies independently" +
                                   (check.ok ? std::string() : ": " + check.reason));
        if (file.certificate.kind == lp::Certificate::Kind::Optimal)
            report.quantity("certifier", "certified optimum = " +
                                             to_fraction_string(file.certificate.objective));
        if (!ns_only)
            report.claim(file.certificate.kind == lp::Certificate::Kind::Optimal &&
                             file.certificate.objective == Rational(7),
                         "certified optimum equals 7 exactly");
        return report.finish();
    }

    lp::SolveInfo info;
    const auto cert = lp::maximize(program, &info);
    const auto check = lp::verify(program, cert);
    report.quantity("certifier", std::string("maximize S over no-signalling") +
                                     (ns_only ? "" : " + BC-local") + " correlations");
    report.quantity("certifier", "optimum = " + to_fraction_string(cert.objective) + " (" +
                                     fmt(to_double(cert.objective)) + ")");
    report.quantity("certifier", "pivots: " + std::to_string(info.phase1_pivots) + " phase 1, " +
                                     std::to_string(info.phase2_pivots) + " phase 2, " +
                                     std::to_string(info.dropped_rows) + " redundant rows dropped");
    if (!export_path.empty()) {
        io::write_text_file(export_path, io::certificate_to_json(cert, program).dump(2) + "\n");
        report.quantity("io", "certificate written to " + export_path);
    }
    report.claim(check.ok, "certificate verifies independently" +
                               (check.ok ? std::string() : ": " + check.reason));
    if (ns_only) {
        Rational coeff_sum(0);
        for (const auto& term : hidden_influence_inequality().terms)
            coeff_sum += ScalarTraits<Rational>::abs(term.coeff);
        report.claim(cert.objective >= Rational(36, 5),
                     "no-signalling optimum is at least 36/5 (quantum region reaches past 7.2)");
        report.claim(cert.objective <= coeff_sum, "no-signalling optimum is at most the sum of |coefficients| (" +
                                                      to_fraction_string(coeff_sum) + ")");
    } else {
        report.claim(cert.objective == Rational(7), "optimum equals the causal bound 7 exactly");
    }
    return report.finish();
}

// ------------------------------------------------------------ check-behavior

template <class T>
int check_behavior_typed(Report& report, const Behavior<T>& b, const T& tol) {
    const bool normalized = b.is_normalized(tol);
    report.quantity("behavior", std::string("parties: ") + std::to_string(b.parties));
    report.claim(normalized, "table is normalized (nonnegative entries, unit block sums)");
    if (!normalized) return report.finish();

    const auto ns = no_signalling_check(b, tol);
    if (ns.empty()) {
        report.quantity("behavior", "no-signalling check: clean");
    } else {
        report.quantity("behavior", "signalling found:");
        std::cout << ns.to_string();
    }

    const bool four_party_binary =
        b.parties == 4 && b.settings == std::vector<int>{2, 2, 2, 2} && b.outcomes == std::vector<int>{2, 2, 2, 2};
    if (four_party_binary) {
        try {
            const T s = evaluate(hidden_influence_inequality(), b, tol);
            report.quantity("inequality", "S = " + fmt(ScalarTraits<T>::as_double(s)));
        } catch (const SignallingAmbiguity& e) {
            report.quantity("inequality", std::string("S undefined: ") + e.what());
        }
        try {
            const auto blocks = certify::nonlocal_bc_blocks(b, tol);
            if (blocks.empty()) {
                report.quantity("ch_facets", "all B-C conditional blocks are local");
            } else {
                for (const auto& blk : blocks)
                    report.quantity(
                        "ch_facets",
                        "B-C conditional nonlocal at a=" + std::to_string(blk.a) + " x=" + std::to_string(blk.x) +
                            " d=" + std::to_string(blk.d) + " w=" + std::to_string(blk.w) + ": facet " +
                            std::to_string(blk.facet) + " value " + fmt(ScalarTraits<T>::as_double(blk.value)));
            }
        } catch (const Error& e) {
            report.quantity("ch_facets", std::string("B-C conditional check skipped: ") + e.what());
        }
    }
    return report.finish();
}

int cmd_check_behavior(const GlobalFlags& g, const std::string& path) {
    Report report("check-behavior");
    const std::string bytes = io::read_text_file(path);
    report.input(path, bytes);
    const io::json j = io::parse_json(bytes, "behavior file '" + path + "'");
    if (g.rational) {
        const auto b = io::behavior_from_json<Rational>(j);
        return check_behavior_typed<Rational>(report, b, g.tol_rational());
    }
    const auto b = io::behavior_from_json<double>(j);
    return check_behavior_typed<double>(report, b, g.tol);
}

// ------------------------------------------------------------- ghz-protocol

int run_protocol(Report& report, int rounds, bool yes, std::uint64_t seed, long trials) {
    const auto r = model::ghz_protocol(rounds, yes, seed, trials);
    report.quantity("vcausal", std::string("message \"") + (yes ? "yes" : "no") + "\": trials " +
                                   std::to_string(r.trials) + ", rounds " + std::to_string(r.rounds) +
                                   ", errors " + std::to_string(r.wrong) + " (rate " +
                                   fmt(r.empirical_error_rate) + ", analytic " +
                                   fmt(r.analytic_error_rate) + ")");
    if (yes) {
        report.claim(r.wrong == 0, "\"yes\" transmits without error");
    } else {
        const double expect = r.analytic_error_rate * static_cast<double>(r.trials);
        const double sigma = std::sqrt(expect * (1.0 - r.analytic_error_rate));
        const bool in_band = std::abs(static_cast<double>(r.wrong) - expect) <= 5.0 * sigma + 1e-9;
        report.claim(in_band, "\"no\" error count within 5 sigma of analytic");
    }
    return 0;
}

int cmd_ghz_protocol(const GlobalFlags& g, int rounds, const std::string& message, long trials,
                     const std::string& config_path) {
    Report report("ghz-protocol");
    report.quantity("vcausal", "one-round uniform-prior success probability = 3/4 exactly");
    if (message.empty() || message == "yes") run_protocol(report, rounds, true, g.seed, trials);
    if (message.empty() || message == "no") run_protocol(report, rounds, false, g.seed + 1, trials);
    if (!config_path.empty()) {
        const std::string bytes = io::read_text_file(config_path);
        report.input(config_path, bytes);
        const auto cfg = io::config_from_json(io::parse_json(bytes, "config file '" + config_path + "'"));
        const double speed = model::signalling_speed(cfg);
        report.quantity("vcausal", "effective message speed over this geometry = " + fmt(speed) +
                                       " m/s = " + fmt(speed / spacetime::kSpeedOfLight) + " c" +
                                       (speed > spacetime::kSpeedOfLight ? " (exceeds c)" : ""));
    }
    return report.finish();
}

// -------------------------------------------------------------- speed-bound

int cmd_speed_bound(const GlobalFlags&, double d, double dt, const std::string& config_path,
                    const std::string& from, const std::string& to, bool scan, double beta_max,
                    int scan_speeds, int scan_angles) {
    Report report("speed-bound");
    spacetime::Event e1, e2;
    if (!config_path.empty()) {
        const std::string bytes = io::read_text_file(config_path);
        report.input(config_path, bytes);
        const auto cfg = io::config_from_json(io::parse_json(bytes, "config file '" + config_path + "'"));
        e1 = cfg.event(from);
        e2 = cfg.event(to);
    } else {
        if (!(d > 0.0)) throw InvalidConfig("need --d > 0 (meters) or --config");
        e1 = spacetime::Event(0.0, 0.0, "first");
        e2 = spacetime::Event(0.0, d, "second");
    }
    if (!(dt > 0.0)) throw InvalidConfig("need --dt > 0 (synchronization uncertainty, seconds)");

    const double lab = spacetime::speed_bound(e1, e2, dt);
    report.quantity("spacetime", "privileged-frame bound: v >= " + fmt(lab) + " m/s = " +
                                     fmt(lab / spacetime::kSpeedOfLight) + " c");
    if (scan) {
        const auto res = spacetime::speed_bound_scan(e1, e2, dt, beta_max, scan_speeds, scan_angles);
        report.quantity("spacetime",
                        "scanned " + std::to_string(res.frames_evaluated) + " frames (|u| <= " +
                            fmt(beta_max) + " c), " + std::to_string(res.unbounded_frames) +
                            " with reversed ordering (unbounded)");
        report.quantity("spacetime", "minimum over frames: v >= " + fmt(res.minimum) + " m/s = " +
                                         fmt(res.minimum / spacetime::kSpeedOfLight) + " c at u = (" +
                                         fmt(res.frame.u[0]) + ", " + fmt(res.frame.u[1]) + ", " +
                                         fmt(res.frame.u[2]) + ") m/s");
        report.claim(res.minimum > 0.0, "every scanned frame needs a strictly positive influence speed");
    }
    return report.finish();
}

// ----------------------------------------------------------- validate-config

int cmd_validate_config(const GlobalFlags&, const std::string& path) {
    Report report("validate-config");
    const std::string bytes = io::read_text_file(path);
    report.input(path, bytes);
    const io::json j = io::parse_json(bytes, "config file '" + path + "'");
    const auto cfg = io::config_from_json(j);
    report.quantity("spacetime", "v = " + fmt(cfg.v) + " m/s = " + fmt(cfg.v / spacetime::kSpeedOfLight) +
                                     " c; events: " + std::to_string(cfg.events.size()) +
                                     "; required links: " + std::to_string(cfg.links.size()));
    const auto verdict = spacetime::validate_config(cfg);
    for (const auto& violation : verdict.violations) report.quantity("spacetime", "violation: " + violation);
    report.claim(verdict.valid, "geometry realizes the required connectivity pattern");

    if (j.contains("choice_events")) {
        std::vector<spacetime::Event> choices;
        for (const auto& e : j.at("choice_events")) {
            std::array<double, 3> r{0.0, 0.0, 0.0};
            if (e.contains("r"))
                for (std::size_t i = 0; i < e.at("r").size() && i < 3; ++i) r[i] = e.at("r")[i].get<double>();
            choices.emplace_back(e.at("t").get<double>(), r, e.value("label", std::string{}));
        }
        const auto schedule = spacetime::ordering_protocol_check(cfg, choices);
        for (const auto& violation : schedule.violations)
            report.quantity("spacetime", "schedule violation: " + violation);
        report.claim(schedule.valid, "measurement schedule respects the required ordering");
    }
    return report.finish();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-speed causal models versus quantum correlations: evaluate the 23-term "
                 "inequality, certify its causal bound, and probe the signalling consequences."};
    app.require_subcommand(1);
    app.fallthrough();  // accept global flags after the subcommand as well

    GlobalFlags g;
    app.add_option("--tol", g.tol, "numerical tolerance for floating-point checks")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized simulations")->capture_default_str();
    app.add_flag("--rational", g.rational, "exact-rational mode for file-based checks and dumps");

    std::string state_file, dump_path;
    auto* quantum_s = app.add_subcommand("quantum-s", "evaluate S on the 4-qubit witness model");
    quantum_s->add_option("--state-file", state_file, "replace the state (JSON amplitudes)");
    quantum_s->add_option("--dump-behavior", dump_path, "write the quantum behavior to a file");

    bool ns_only = false, marginals_from_quantum = false;
    double radius = 1e-9;
    std::string export_cert, verify_cert;
    auto* certify = app.add_subcommand("certify-bound", "solve the exact LPs with verified certificates");
    certify->add_flag("--ns-only", ns_only, "drop the BC-local rows (no-signalling polytope only)");
    certify->add_flag("--marginals-from-quantum", marginals_from_quantum,
                      "feasibility of the quantum ABD/ACD marginals instead of the bound");
    certify->add_option("--radius", radius, "marginal perturbation radius for robustness")
        ->capture_default_str();
    certify->add_option("--export-certificate", export_cert, "write the certificate to a file");
    certify->add_option("--verify-certificate", verify_cert, "re-verify a certificate file against this program");

    std::string behavior_path;
    auto* check = app.add_subcommand("check-behavior", "validate a behavior file and report its properties");
    check->add_option("path", behavior_path, "behavior file")->required();

    int rounds = 1;
    long trials = 100000;
    std::string message, protocol_config;
    auto* protocol = app.add_subcommand("ghz-protocol", "simulate the triangle messaging protocol");
    protocol->add_option("--rounds", rounds, "rounds per trial")->capture_default_str();
    protocol->add_option("--message", message, "restrict to one message: yes or no")
        ->check(CLI::IsMember({"yes", "no"}));
    protocol->add_option("--trials", trials, "independent protocol executions")->capture_default_str();
    protocol->add_option("--config", protocol_config, "geometry for the effective message speed");

    double d = 0.0, dt = 0.0, beta_max = 0.00123;
    int scan_speeds = 4, scan_angles = 6;
    bool scan = false;
    std::string sb_config, sb_from = "first", sb_to = "second";
    auto* speed = app.add_subcommand("speed-bound", "minimum influence speed compatible with observed timing");
    speed->add_option("--d", d, "spatial separation in meters (simultaneous events)");
    speed->add_option("--dt", dt, "synchronization uncertainty in seconds")->required();
    speed->add_option("--config", sb_config, "take the two events from a config file");
    speed->add_option("--from", sb_from, "label of the first event (with --config)");
    speed->add_option("--to", sb_to, "label of the second event (with --config)");
    speed->add_flag("--scan", scan, "scan candidate privileged frames");
    speed->add_option("--beta-max", beta_max, "largest scanned frame speed as a fraction of c")
        ->capture_default_str();
    speed->add_option("--scan-speeds", scan_speeds, "speed steps in the scan")->capture_default_str();
    speed->add_option("--scan-angles", scan_angles, "polar angle steps in the scan")->capture_default_str();

    std::string config_path;
    auto* validate = app.add_subcommand("validate-config", "check a space-time configuration file");
    validate->add_option("path", config_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (quantum_s->parsed()) return cmd_quantum_s(g, state_file, dump_path);
        if (certify->parsed())
            return cmd_certify_bound(g, ns_only, marginals_from_quantum, radius, export_cert, verify_cert);
        if (check->parsed()) return cmd_check_behavior(g, behavior_path);
        if (protocol->parsed()) return cmd_ghz_protocol(g, rounds, message, trials, protocol_config);
        if (speed->parsed())
            return cmd_speed_bound(g, d, dt, sb_config, sb_from, sb_to, scan, beta_max, scan_speeds,
                                   scan_angles);
        if (validate->parsed()) return cmd_validate_config(g, config_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
