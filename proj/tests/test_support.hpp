#pragma once

// Shared helpers for the test suites: exact random no-signalling behaviors
// built as rational mixtures of the 24 extreme points of the 2-party,
// 2-setting, 2-outcome no-signalling polytope (16 deterministic strategies
// and 8 PR boxes).

#include <random>
#include <vector>

#include "vcausal/behavior.hpp"

namespace test_support {

inline const std::vector<vcausal::Behavior<vcausal::Rational>>& ns_extreme_points_2222() {
    using vcausal::Behavior;
    using vcausal::Rational;
    static const std::vector<Behavior<Rational>> points = [] {
        std::vector<Behavior<Rational>> v;
        for (int code = 0; code < 16; ++code)
            v.push_back(vcausal::deterministic_behavior<Rational>(
                {{code & 1, (code >> 1) & 1}, {(code >> 2) & 1, (code >> 3) & 1}}));
        for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be)
                for (int ga = 0; ga < 2; ++ga) v.push_back(vcausal::pr_box<Rational>(al, be, ga));
        return v;
    }();
    return points;
}

/// Exact rational mixture of the extreme points. local_only drops the PR-box
/// vertices, so the sample is guaranteed local. Otherwise half the samples
/// pile most of their mass onto a single PR box: an even mixture of all 24
/// vertices is essentially always local (the PR boxes average out to the
/// uniform behavior), so without the bias the nonlocal branch would never be
/// exercised.
inline vcausal::Behavior<vcausal::Rational> random_ns_2222(std::mt19937_64& rng, bool local_only = false) {
    using vcausal::Behavior;
    using vcausal::Rational;
    const auto& points = ns_extreme_points_2222();
    const std::size_t n = local_only ? 16 : points.size();
    std::uniform_int_distribution<int> dist(0, 20);
    std::vector<int> weights(n);
    long total = 0;
    while (total == 0) {
        for (auto& w : weights) {
            w = dist(rng);
            total += w;
        }
    }
    if (!local_only && (rng() & 1u)) {
        const std::size_t box = 16 + static_cast<std::size_t>(rng() % 8);
        weights[box] += 400;
        total += 400;
    }
    auto b = Behavior<Rational>::all_binary(2);
    for (std::size_t k = 0; k < n; ++k) {
        if (weights[k] == 0) continue;
        const Rational w(weights[k], total);
        for (int s = 0; s < 4; ++s)
            for (int o = 0; o < 4; ++o) b.table[s][o] += w * points[k].table[s][o];
    }
    return b;
}

} // namespace test_support
