#include <catch_amalgamated.hpp>

#include "vcausal/behavior.hpp"
#include "vcausal/quantum.hpp"

using namespace vcausal;

TEST_CASE("packing round trips") {
    auto b = Behavior<double>::all_binary(4);
    REQUIRE(b.setting_count() == 16);
    REQUIRE(b.outcome_count() == 16);
    for (int s = 0; s < 16; ++s) CHECK(b.pack_settings(b.unpack_settings(s)) == s);
    // party 0 is the most significant digit
    CHECK(b.pack_settings({1, 0, 0, 0}) == 8);
    CHECK(b.pack_outcomes({0, 0, 0, 1}) == 1);

    Behavior<double> mixed({2, 3}, {2, 2});
    CHECK(mixed.setting_count() == 6);
    CHECK(mixed.pack_settings({1, 2}) == 5);
    CHECK(mixed.unpack_settings(4) == std::vector<int>{1, 1});
}

TEST_CASE("normalization check") {
    auto u = uniform_behavior<double>(2);
    CHECK(u.is_normalized(0.0));
    u.table[0][0] += 1e-6;
    CHECK_FALSE(u.is_normalized(1e-9));
    CHECK(u.is_normalized(1e-3));

    auto r = uniform_behavior<Rational>(3);
    CHECK(r.is_normalized(Rational(0)));
    r.table[0][0] = Rational(-1, 8);
    CHECK_FALSE(r.is_normalized(Rational(0)));
}

TEST_CASE("deterministic and PR-box behaviors") {
    // both parties output their setting
    Behavior<double> d = deterministic_behavior<double>({{0, 1}, {0, 1}});
    CHECK(d.at({0, 1}, {0, 1}) == 1.0);
    CHECK(d.at({0, 1}, {0, 0}) == 0.0);
    CHECK(d.is_normalized(0.0));

    const auto pr = pr_box<Rational>();
    CHECK(pr.is_normalized(Rational(0)));
    CHECK(pr.at({0, 0}, {0, 0}) == Rational(1, 2));
    CHECK(pr.at({0, 0}, {0, 1}) == Rational(0));
    CHECK(pr.at({1, 1}, {0, 1}) == Rational(1, 2));  // anticorrelated only at y=z=1
    CHECK(pr.at({1, 1}, {0, 0}) == Rational(0));
    CHECK(is_no_signalling(pr, Rational(0)));
}

TEST_CASE("marginals preserve mass and drop parties") {
    const auto b = behavior_of(witness_model());
    const auto m = marginal(b, {0, 3});
    REQUIRE(m.subset == std::vector<int>({0, 3}));
    for (int s = 0; s < b.setting_count(); ++s) {
        double sum = 0.0;
        for (double p : m.table[s]) sum += p;
        CHECK(sum == Catch::Approx(1.0));
    }
    CHECK_THROWS_AS(marginal(b, {}), EmptySubset);
}

TEST_CASE("marginal_behavior collapses settings when allowed") {
    const auto b = behavior_of(witness_model());
    const auto ad = marginal_behavior(b, {0, 3}, 1e-10);
    REQUIRE(ad.parties == 2);
    REQUIRE(ad.setting_count() == 4);
    CHECK(ad.is_normalized(1e-12));

    // a signalling behavior must be refused: party 1's outcome copies party 0's setting
    auto sig = Behavior<double>::all_binary(2);
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) sig.at({y, z}, {0, y}) = 1.0;
    CHECK_THROWS_AS(marginal_behavior(sig, {1}, 1e-10), SignallingAmbiguity);
}

TEST_CASE("no-signalling check flags the offender") {
    auto sig = Behavior<double>::all_binary(2);
    for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) sig.at({y, z}, {0, y}) = 1.0;
    const auto report = no_signalling_check(sig, 1e-12);
    REQUIRE_FALSE(report.empty());
    bool found = false;
    for (const auto& e : report.entries)
        if (e.receivers == std::vector<int>{1} && e.influencer == 0) {
            found = true;
            CHECK(e.variation == Catch::Approx(1.0));  // marginal flips completely
        }
    CHECK(found);
    CHECK_FALSE(report.to_string().empty());

    CHECK(is_no_signalling(uniform_behavior<double>(3), 0.0));
}

TEST_CASE("conditioning renormalizes the remaining parties") {
    const auto pr = pr_box<double>();
    // condition on party 0 at setting 1, outcome 0: party 1's outcome is y&z-determined
    const auto c = condition(pr, {FixedParty{0, 1, 0}});
    REQUIRE(c.parties == 1);
    CHECK(c.at({0}, {0}) == Catch::Approx(1.0));  // z=0: b=c
    CHECK(c.at({1}, {1}) == Catch::Approx(1.0));  // z=1, y=1: b xor c = 1

    // conditioning on an impossible event fails loudly
    auto d = deterministic_behavior<double>({{0, 0}, {0, 0}});
    CHECK_THROWS_AS(condition(d, {FixedParty{0, 0, 1}}), ZeroProbabilityCondition);
    CHECK_THROWS_AS(condition(pr, std::vector<FixedParty>{{0, 0, 0}, {1, 0, 0}}), EmptySubset);
    CHECK_THROWS_AS(condition(pr, std::vector<FixedParty>{{0, 0, 0}, {0, 1, 0}}), DuplicateParty);
}

TEST_CASE("scalar conversion is exact from double to rational") {
    auto b = uniform_behavior<double>(2);
    b.table[2][3] = 0.125;
    b.table[2][0] = 0.375;
    const auto r = convert_behavior<Rational>(b);
    CHECK(r.table[2][3] == Rational(1, 8));
    CHECK(r.table[2][0] == Rational(3, 8));
    const auto back = convert_behavior<double>(r);
    CHECK(back.table[2][3] == 0.125);
}
