#include <catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include "vcausal/certifier.hpp"
#include "vcausal/io.hpp"
#include "vcausal/quantum.hpp"

using namespace vcausal;
using namespace vcausal::io;

#ifndef VCAUSAL_TEST_DATA_DIR
#error "VCAUSAL_TEST_DATA_DIR must point at the sample documents"
#endif

namespace {
const std::string kData = VCAUSAL_TEST_DATA_DIR;
}

TEST_CASE("fingerprints are stable") {
    // published FNV-1a 64 test vectors
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
    CHECK(fnv1a64("a") != fnv1a64("b"));
    CHECK(hex64(0) == "0000000000000000");
    CHECK(hex64(0x1a2b3c4d5e6f7081ull) == "1a2b3c4d5e6f7081");
}

TEST_CASE("rational behavior documents round-trip bit-exactly") {
    auto b = uniform_behavior<Rational>(2);
    b.table[1][2] = Rational(1, 3);
    b.table[1][3] = Rational(5, 12);
    b.table[1][0] = Rational(1, 4);
    b.table[1][1] = Rational(0);
    const json j = behavior_to_json(b);
    const auto back = behavior_from_json<Rational>(j);
    CHECK(back.table == b.table);
    // serialized once more, the text is identical
    CHECK(behavior_to_json(back).dump() == j.dump());
}

TEST_CASE("double behavior documents round-trip") {
    const auto b = behavior_of(witness_model());
    const auto back = behavior_from_json<double>(behavior_to_json(b));
    for (int s = 0; s < b.setting_count(); ++s)
        for (int o = 0; o < b.outcome_count(); ++o)
            CHECK(back.table[s][o] == b.table[s][o]);  // json doubles are exact
}

TEST_CASE("behavior parser diagnoses malformed documents") {
    const auto good = behavior_to_json(uniform_behavior<Rational>(2));

    auto j = good;
    j.erase("table");
    CHECK_THROWS_AS(behavior_from_json<Rational>(j), ParseError);

    j = good;
    j["parties"] = 3;
    CHECK_THROWS_AS(behavior_from_json<Rational>(j), ParseError);

    j = good;
    j["table"].erase("1,1");
    CHECK_THROWS_AS(behavior_from_json<Rational>(j), ParseError);  // missing tuple

    j = good;
    j["table"]["5,0"] = j["table"]["0,0"];
    CHECK_THROWS_AS(behavior_from_json<Rational>(j), ParseError);  // out of range

    j = good;
    j["table"]["0,0"] = json::array({"1/4", "1/4", "1/4"});
    CHECK_THROWS_AS(behavior_from_json<Rational>(j), ParseError);  // short row

    j = good;
    j["table"]["0,0"][0] = "not-a-number";
    CHECK_THROWS_AS(behavior_from_json<Rational>(j), ParseError);

    // the error message names the offending location
    j = good;
    j["table"]["1,0"][2] = "1/0x";
    try {
        behavior_from_json<Rational>(j);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("table['1,0'][2]") != std::string::npos);
    }
}

TEST_CASE("sample behavior documents load as expected") {
    const auto uniform = load_behavior<Rational>(kData + "/uniform_rational.json");
    CHECK(uniform.table == uniform_behavior<Rational>(4).table);

    // a negative entry parses fine; it is the normalization check that rejects it
    const auto negative = load_behavior<Rational>(kData + "/negative_entry.json");
    CHECK_FALSE(negative.is_normalized(Rational(0)));

    const auto pr = load_behavior<double>(kData + "/pr_box.json");
    CHECK(convert_behavior<Rational>(pr).table == pr_box<Rational>().table);

    CHECK_THROWS_AS(load_behavior<double>(kData + "/does_not_exist.json"), ParseError);
}

TEST_CASE("config documents round-trip") {
    const auto cfg = load_config(kData + "/triangle_config.json");
    CHECK(cfg.v == Catch::Approx(10.0 * spacetime::kSpeedOfLight));
    CHECK(cfg.events.size() == 3);
    CHECK(cfg.links.size() == 4);
    CHECK(spacetime::validate_config(cfg).valid);

    const json j = config_to_json(cfg);
    const auto back = config_from_json(j);
    CHECK(back.v == cfg.v);
    REQUIRE(back.events.size() == cfg.events.size());
    for (std::size_t i = 0; i < cfg.events.size(); ++i) {
        CHECK(back.events[i].label == cfg.events[i].label);
        CHECK(back.events[i].t == cfg.events[i].t);
        CHECK(back.events[i].r == cfg.events[i].r);
    }

    json both = j;
    both["v"] = 1.0e10;  // v and v_over_c together are ambiguous
    CHECK_THROWS_AS(config_from_json(both), ParseError);
    json neither = j;
    neither.erase("v_over_c");
    CHECK_THROWS_AS(config_from_json(neither), ParseError);
    json sub = j;
    sub["v_over_c"] = 0.5;  // not superluminal
    CHECK_THROWS_AS(config_from_json(sub), InvalidConfig);
}

TEST_CASE("model documents compile to the built-in triangle models") {
    for (const char* name : {"triangle_dc_model.json", "triangle_shared_bit_model.json"}) {
        const TableModel tm = load_model(kData + "/" + name);
        const auto from_file = model::behavior_of_model(tm.compile());
        const auto builtin = behavior_of_model(
            std::string(name) == "triangle_dc_model.json" ? model::ghz_triangle_dc()
                                                          : model::ghz_triangle_shared_bit());
        REQUIRE(from_file.settings == builtin.settings);
        for (int s = 0; s < builtin.setting_count(); ++s)
            for (int o = 0; o < builtin.outcome_count(); ++o)
                CHECK(from_file.table[s][o] == Catch::Approx(builtin.table[s][o]).margin(1e-12));
    }

    json bad = model_to_json(load_model(kData + "/triangle_dc_model.json"));
    bad["responses"] = json::array();
    CHECK_THROWS_AS(model_from_json(bad), ParseError);
}

TEST_CASE("certificates round-trip and refuse the wrong program") {
    lp::LinearProgram p;
    p.num_vars = 2;
    p.objective = {2, 1};
    p.rows.resize(2);
    p.rows[0].coeff = {1, 1};
    p.rows[0].rel = lp::Relation::Eq;
    p.rows[0].rhs = 4;
    p.rows[1].coeff = {1, 0};
    p.rows[1].rel = lp::Relation::Le;
    p.rows[1].rhs = 3;

    const auto cert = lp::maximize(p);
    const json j = certificate_to_json(cert, p);
    const CertificateFile f = certificate_from_json(j);
    CHECK(f.program_digest == lp_digest(p));
    CHECK(f.num_vars == 2);
    CHECK(f.rows == 2);
    CHECK(f.certificate.objective == cert.objective);
    CHECK(f.certificate.primal == cert.primal);
    CHECK(f.certificate.dual == cert.dual);
    CHECK(lp::verify(p, f.certificate).ok);

    // a different program yields a different digest
    lp::LinearProgram q = p;
    q.rows[1].rhs = 2;
    CHECK(lp_digest(q) != lp_digest(p));

    // infeasible certificates carry the Farkas vector
    lp::LinearProgram inf;
    inf.num_vars = 1;
    inf.objective = {0};
    inf.rows.resize(2);
    inf.rows[0].coeff = {1};
    inf.rows[0].rel = lp::Relation::Le;
    inf.rows[0].rhs = 1;
    inf.rows[1].coeff = {-1};
    inf.rows[1].rel = lp::Relation::Le;
    inf.rows[1].rhs = -2;
    const auto icert = lp::maximize(inf);
    const CertificateFile fi = certificate_from_json(certificate_to_json(icert, inf));
    CHECK(fi.certificate.kind == lp::Certificate::Kind::Infeasible);
    CHECK(fi.certificate.farkas == icert.farkas);

    json broken = j;
    broken["kind"] = "sideways";
    CHECK_THROWS_AS(certificate_from_json(broken), ParseError);
    json nodual = j;
    nodual.erase("dual");
    CHECK_THROWS_AS(certificate_from_json(nodual), ParseError);
}

TEST_CASE("state documents") {
    json j;
    j["amplitudes"] = json::array({1.0, 0.0, 0.0, 1.0});
    const StateVector psi = state_from_json(j, 4);
    CHECK(psi.squared_norm() == Catch::Approx(1.0));
    CHECK(psi[0].real() == Catch::Approx(1.0 / std::sqrt(2.0)));

    json complex_doc;
    complex_doc["amplitudes"] = json::array({json::array({0.0, 1.0}), 0.0});
    const StateVector i0 = state_from_json(complex_doc, 2);
    CHECK(i0[0].imag() == Catch::Approx(1.0));

    CHECK_THROWS_AS(state_from_json(j, 8), ParseError);  // wrong dimension
    json zero;
    zero["amplitudes"] = json::array({0.0, 0.0});
    CHECK_THROWS_AS(state_from_json(zero, 2), ParseError);
    json bad;
    bad["amplitudes"] = json::array({json::array({1.0, 2.0, 3.0}), 0.0});
    CHECK_THROWS_AS(state_from_json(bad, 2), ParseError);
}

TEST_CASE("behavior files written to disk reload identically") {
    const std::string path = "/tmp/vcausal_io_roundtrip.json";
    auto b = pr_box<Rational>(1, 0, 1);
    save_behavior(path, b);
    const auto back = load_behavior<Rational>(path);
    CHECK(back.table == b.table);
    std::remove(path.c_str());
}
