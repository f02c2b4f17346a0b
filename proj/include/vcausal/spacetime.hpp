#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "vcausal/errors.hpp"

namespace vcausal::spacetime {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact

/// A labeled point in the privileged reference frame. Positions are padded to
/// three components; times in seconds, positions in meters.
struct Event {
    double t = 0.0;
    std::array<double, 3> r{0.0, 0.0, 0.0};
    std::string label;

    Event() = default;
    Event(double t_, std::array<double, 3> r_, std::string label_ = {})
        : t(t_), r(r_), label(std::move(label_)) {
        if (!std::isfinite(t) || !std::isfinite(r[0]) || !std::isfinite(r[1]) || !std::isfinite(r[2]))
            throw InvalidConfig("event coordinates must be finite");
    }
    Event(double t_, double x, std::string label_ = {}) : Event(t_, {x, 0.0, 0.0}, std::move(label_)) {}
};

inline double distance(const Event& a, const Event& b) {
    const double dx = b.r[0] - a.r[0], dy = b.r[1] - a.r[1], dz = b.r[2] - a.r[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// e2 lies in the closed forward v-cone of e1: strictly later, and the
/// influence travelling at speed v arrives on time (boundary counts).
inline bool v_connected(const Event& e1, const Event& e2, double v) {
    if (!(v > 0.0)) throw InvalidConfig("influence speed must be positive");
    const double dt = e2.t - e1.t;
    return dt > 0.0 && distance(e1, e2) <= v * dt;
}

struct Link {
    std::string earlier;
    std::string later;
    bool connected = true;  // required verdict of v_connected(earlier, later)
};

/// Influence speed, labeled events, and the connectivity pattern the geometry
/// must realize. The influence is superluminal but finite: c < v.
struct VConeConfig {
    double v = 0.0;
    std::vector<Event> events;
    std::vector<Link> links;

    VConeConfig() = default;
    VConeConfig(double v_, std::vector<Event> events_, std::vector<Link> links_)
        : v(v_), events(std::move(events_)), links(std::move(links_)) {
        require_valid();
    }

    void require_valid() const {
        if (!(v > kSpeedOfLight)) throw InvalidConfig("influence speed must exceed c");
        for (std::size_t i = 0; i < events.size(); ++i)
            for (std::size_t j = i + 1; j < events.size(); ++j)
                if (events[i].label == events[j].label)
                    throw InvalidConfig("duplicate event label '" + events[i].label + "'");
    }

    const Event& event(const std::string& label) const {
        for (const auto& e : events)
            if (e.label == label) return e;
        throw UnknownLabel("no event labeled '" + label + "'");
    }
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;

    void fail(std::string why) {
        valid = false;
        violations.push_back(std::move(why));
    }
};

/// Checks every required link of the configuration against v_connected.
inline ValidationReport validate_config(const VConeConfig& cfg) {
    cfg.require_valid();
    ValidationReport report;
    for (const auto& link : cfg.links) {
        const Event& a = cfg.event(link.earlier);
        const Event& b = cfg.event(link.later);
        const bool actual = v_connected(a, b, cfg.v);
        if (actual != link.connected)
            report.fail(link.earlier + " -> " + link.later + ": required " +
                        (link.connected ? "connected" : "not connected") + ", got " +
                        (actual ? "connected" : "not connected"));
    }
    return report;
}

/// A boost to a frame moving at velocity u (|u| < c strictly) relative to the
/// privileged frame.
struct FrameBoost {
    std::array<double, 3> u{0.0, 0.0, 0.0};

    FrameBoost() = default;
    explicit FrameBoost(std::array<double, 3> u_) : u(u_) {
        if (!(speed() < kSpeedOfLight)) throw SuperluminalFrame();
    }
    explicit FrameBoost(double ux) : FrameBoost(std::array<double, 3>{ux, 0.0, 0.0}) {}

    double speed() const { return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]); }
    double gamma() const {
        const double beta = speed() / kSpeedOfLight;
        return 1.0 / std::sqrt(1.0 - beta * beta);
    }
};

/// Standard Lorentz transformation of (t, r) into the boosted frame.
inline Event boost_event(const Event& e, const FrameBoost& f) {
    const double s = f.speed();
    if (s == 0.0) return e;
    const double g = f.gamma();
    const std::array<double, 3> n{f.u[0] / s, f.u[1] / s, f.u[2] / s};
    const double r_par = e.r[0] * n[0] + e.r[1] * n[1] + e.r[2] * n[2];
    const double t_out = g * (e.t - (s * r_par) / (kSpeedOfLight * kSpeedOfLight));
    const double shift = (g - 1.0) * r_par - g * s * e.t;
    Event out = e;
    out.t = t_out;
    for (int i = 0; i < 3; ++i) out.r[i] = e.r[i] + shift * n[i];
    return out;
}

/// c^2 dt^2 - |dr|^2 between two events; Lorentz invariant.
inline double interval(const Event& a, const Event& b) {
    const double dt = b.t - a.t;
    const double dr = distance(a, b);
    return kSpeedOfLight * kSpeedOfLight * dt * dt - dr * dr;
}

/// Minimum influence speed that would v-connect e1 to e2 as seen in frame f,
/// after widening the time difference by the synchronization uncertainty:
/// v_min = |dr'| / (dt' + sync_uncertainty). If even the widened ordering has
/// e2 before e1 the bound is infinite and DegenerateTiming is raised.
inline double speed_bound(const Event& e1, const Event& e2, double sync_uncertainty,
                          const FrameBoost& f = FrameBoost()) {
    if (!(sync_uncertainty > 0.0)) throw InvalidConfig("synchronization uncertainty must be positive");
    const Event a = boost_event(e1, f);
    const Event b = boost_event(e2, f);
    const double dr = distance(a, b);
    if (dr == 0.0) throw InvalidConfig("events are co-located; no speed bound");
    const double denom = (b.t - a.t) + sync_uncertainty;
    if (denom <= 0.0) throw DegenerateTiming("event order reversed beyond the timing uncertainty");
    return dr / denom;
}

struct ScanResult {
    double minimum = 0.0;               // smallest bound over scanned frames
    FrameBoost frame;                   // frame achieving it
    std::size_t frames_evaluated = 0;   // includes the unboosted frame
    std::size_t unbounded_frames = 0;   // frames whose bound is infinite
};

/// Evaluates speed_bound over a deterministic grid of candidate privileged
/// frames: speeds k/n_speeds * beta_max * c (k = 1..n_speeds) times a polar
/// grid of directions, plus the unboosted frame. The minimum is the bound no
/// candidate frame can evade.
inline ScanResult speed_bound_scan(const Event& e1, const Event& e2, double sync_uncertainty,
                                   double beta_max, int n_speeds, int n_angles) {
    if (!(beta_max > 0.0) || !(beta_max < 1.0)) throw InvalidConfig("beta_max must lie in (0, 1)");
    if (n_speeds < 1 || n_angles < 1) throw InvalidConfig("scan resolution must be positive");
    constexpr double pi = 3.14159265358979323846;
    ScanResult result;
    bool have = false;
    auto consider = [&](const FrameBoost& f) {
        ++result.frames_evaluated;
        double bound;
        try {
            bound = speed_bound(e1, e2, sync_uncertainty, f);
        } catch (const DegenerateTiming&) {
            ++result.unbounded_frames;
            return;
        }
        if (!have || bound < result.minimum) {
            result.minimum = bound;
            result.frame = f;
            have = true;
        }
    };
    consider(FrameBoost());
    for (int k = 1; k <= n_speeds; ++k) {
        const double speed = beta_max * kSpeedOfLight * k / n_speeds;
        for (int i = 0; i < n_angles; ++i) {
            const double theta = pi * (i + 0.5) / n_angles;
            for (int j = 0; j < 2 * n_angles; ++j) {
                const double phi = 2.0 * pi * j / (2 * n_angles);
                consider(FrameBoost({speed * std::sin(theta) * std::cos(phi),
                                     speed * std::sin(theta) * std::sin(phi),
                                     speed * std::cos(theta)}));
            }
        }
    }
    return result;
}

/// Choice events for the signalling schedule: the first random bit "x", the
/// later bit "w", and the selector events selecting B-or-C and its setting.
inline constexpr const char* kChoiceX = "x";
inline constexpr const char* kChoiceW = "w";
inline constexpr const char* kChoiceSelector = "BC-selector";
inline constexpr const char* kChoiceSetting = "y-or-z";

/// Verifies the measurement schedule of the signalling protocol: x strictly
/// earliest, w inside the light cone of A's measurement, and the B/C selector
/// and its setting choice inside the light cone of D's measurement ("even
/// light would arrive on time"). Measurement events are cfg labels "A", "D".
inline ValidationReport ordering_protocol_check(const VConeConfig& cfg,
                                                const std::vector<Event>& choice_events) {
    auto find = [&](const char* label) -> const Event& {
        for (const auto& e : choice_events)
            if (e.label == label) return e;
        throw UnknownLabel(std::string("no choice event labeled '") + label + "'");
    };
    const Event& x = find(kChoiceX);
    const Event& w = find(kChoiceW);
    const Event& selector = find(kChoiceSelector);
    const Event& setting = find(kChoiceSetting);
    const Event& meas_a = cfg.event("A");
    const Event& meas_d = cfg.event("D");

    ValidationReport report;
    for (const Event* e : {&w, &selector, &setting, &meas_a, &meas_d})
        if (!(x.t < e->t))
            report.fail("choice x is not strictly earlier than " +
                        (e->label.empty() ? std::string("event") : e->label));
    if (!v_connected(meas_a, w, kSpeedOfLight))
        report.fail("choice w is outside the light cone of measurement A");
    if (!v_connected(meas_d, selector, kSpeedOfLight))
        report.fail("the B/C selector is outside the light cone of measurement D");
    if (!v_connected(meas_d, setting, kSpeedOfLight))
        report.fail("the setting choice is outside the light cone of measurement D");
    return report;
}

} // namespace vcausal::spacetime
