#include <catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"
#include "vcausal/certifier.hpp"
#include "vcausal/ch_facets.hpp"

using namespace vcausal;

TEST_CASE("facet list has the expected size and closure properties") {
    const auto& facets = ch_facets();
    REQUIRE(facets.size() == 8);
    REQUIRE(canonical_ch_facet() >= 0);
    REQUIRE(canonical_ch_facet() < 8);

    // distinct as functionals on the no-signalling polytope
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (std::size_t j = i + 1; j < facets.size(); ++j)
            CHECK(detail::ns_signature(facets[i]) != detail::ns_signature(facets[j]));
}

TEST_CASE("deterministic strategies satisfy every facet") {
    for (int code = 0; code < 16; ++code) {
        const auto b = deterministic_behavior<Rational>(
            {{code & 1, (code >> 1) & 1}, {(code >> 2) & 1, (code >> 3) & 1}});
        for (std::size_t f = 0; f < ch_facets().size(); ++f)
            CHECK(ch_value(b, static_cast<int>(f)) <= Rational(0));
        const auto verdict = is_local_2222(b, Rational(0));
        CHECK(verdict.local);
    }
}

TEST_CASE("PR boxes sit exactly 1/2 outside one facet") {
    // the canonical box violates the canonical facet by exactly 1/2
    const auto pr = pr_box<Rational>();
    CHECK(ch_value(pr, canonical_ch_facet()) == Rational(1, 2));
    const auto verdict = is_local_2222(pr, Rational(0));
    REQUIRE_FALSE(verdict.local);
    CHECK(verdict.facet == canonical_ch_facet());
    CHECK(verdict.value == Rational(1, 2));

    // every PR box violates exactly one facet, always by 1/2
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be)
            for (int ga = 0; ga < 2; ++ga) {
                const auto box = pr_box<Rational>(al, be, ga);
                int violated = 0;
                for (std::size_t f = 0; f < ch_facets().size(); ++f) {
                    const Rational v = ch_value(box, static_cast<int>(f));
                    if (v > 0) {
                        ++violated;
                        CHECK(v == Rational(1, 2));
                    }
                }
                CHECK(violated == 1);
            }
}

TEST_CASE("uniform behavior scores -1/2 on every facet") {
    const auto u = uniform_behavior<Rational>(2);
    for (std::size_t f = 0; f < ch_facets().size(); ++f)
        CHECK(ch_value(u, static_cast<int>(f)) == Rational(-1, 2));
    CHECK(is_local_2222(u, Rational(0)).local);
}

TEST_CASE("facet test requires a no-signalling input") {
    auto sig = Behavior<Rational>::all_binary(2);
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) sig.at({y, z}, {0, y}) = Rational(1);
    CHECK_THROWS_AS(is_local_2222(sig, Rational(0)), SignallingInput);
    CHECK_THROWS_AS(ch_value(uniform_behavior<Rational>(3), 0), WrongShape);
}

TEST_CASE("facet test agrees with the exact vertex decomposition") {
    std::mt19937_64 rng(7);
    int nonlocal_seen = 0, local_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const bool local_only = trial % 3 == 0;
        const auto b = test_support::random_ns_2222(rng, local_only);
        const auto verdict = is_local_2222(b, Rational(0));
        const auto decomp = certify::local_decomposition_2222(b);
        REQUIRE(decomp.verified);
        CHECK(verdict.local == decomp.local);
        if (local_only) CHECK(decomp.local);
        if (decomp.local) {
            ++local_seen;
            // the weights really reconstruct the behavior
            Rational wsum(0);
            auto recon = Behavior<Rational>::all_binary(2);
            const auto& points = test_support::ns_extreme_points_2222();
            for (int k = 0; k < 16; ++k) {
                wsum += decomp.weights[k];
                REQUIRE(decomp.weights[k] >= 0);
                for (int s = 0; s < 4; ++s)
                    for (int o = 0; o < 4; ++o)
                        recon.table[s][o] += decomp.weights[k] * points[k].table[s][o];
            }
            CHECK(wsum == Rational(1));
            CHECK(recon.table == b.table);
        } else {
            ++nonlocal_seen;
            CHECK(verdict.value > 0);
        }
    }
    // the sampler must exercise both branches for this test to mean anything
    CHECK(local_seen > 10);
    CHECK(nonlocal_seen > 10);
}
