#include "doctest.h"

#include <sstream>

#include "gme/errors.hpp"
#include "gme/report.hpp"
#include "oracles.hpp"

using namespace gme;

namespace {

std::string input_error_message(const json& j) {
    try {
        behavior_from_json(j);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

std::string settings_error_message(const json& j) {
    try {
        settings_from_json(j);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_SUITE("report") {
    TEST_CASE("behavior JSON round trip") {
        auto g = testing::rng(61);
        const auto p = born_behavior(pure_state(testing::random_pure(g, 8), "r"), testing::random_settings(g));
        const auto j = behavior_to_json(p, json{{"note", "x"}});
        CHECK(j["inputs"] == 2);
        CHECK(j["parties"] == 3);
        CHECK(j["meta"]["note"] == "x");
        CHECK(behavior_from_json(json::parse(j.dump())) == p);
    }

    TEST_CASE("behavior JSON errors name the field") {
        const auto good = to_json(Behavior::white_noise());
        auto j = good;
        j.erase("p");
        CHECK(input_error_message(j).find("behavior.p") != std::string::npos);
        j = good;
        j["p"].erase(0);
        CHECK(input_error_message(j).find("64") != std::string::npos);
        j = good;
        j["p"][3] = "x";
        CHECK(input_error_message(j).find("behavior.p[3]") != std::string::npos);
        j = good;
        j["inputs"] = 3;
        CHECK(input_error_message(j).find("behavior.inputs") != std::string::npos);
        CHECK_THROWS_AS(behavior_from_json(json::array()), InputError);
    }

    TEST_CASE("settings JSON") {
        auto g = testing::rng(62);
        const auto s = testing::random_settings(g);
        const auto back = settings_from_json(json::parse(to_json(s).dump()));
        for (int party = 0; party < 3; ++party)
            for (int k = 0; k < 2; ++k)
                for (int c = 0; c < 3; ++c)
                    CHECK(std::abs(back.settings[party][k].direction()[c] - s.settings[party][k].direction()[c]) <= 1e-15);
        auto j = to_json(s);
        j.erase("B");
        CHECK(settings_error_message(j).find("settings.B") != std::string::npos);
        j = to_json(s);
        j["C"][1] = json::array({1.0, 0.0});
        CHECK(settings_error_message(j).find("settings.C[1]") != std::string::npos);
        j = to_json(s);
        j["A"][0] = json::array({2.0, 0.0, 0.0});
        CHECK(settings_error_message(j).find("settings.A[0]") != std::string::npos);
    }

    TEST_CASE("manifest round trip") {
        RunManifest m;
        m.command = "optimize";
        m.arguments = {{"state", "w"}, {"objective", "mermin"}};
        m.seed = 7;
        m.tol_mermin = 0.0025;
        m.tol_marginal = 3e-7;
        m.timestamp = utc_timestamp();
        CHECK(manifest_from_json(json::parse(to_json(m).dump())) == m);
        CHECK_THROWS_AS(manifest_from_json(json{{"command", "x"}}), InputError);
        CHECK(m.timestamp.size() == 20);
    }

    TEST_CASE("state specifications") {
        CHECK(max_abs_diff(parse_state_spec("w").matrix(), w_state().matrix()) == 0.0);
        CHECK(max_abs_diff(parse_state_spec("ghz").matrix(), ghz_state().matrix()) == 0.0);
        CHECK(max_abs_diff(parse_state_spec("noisy-w:0.5").matrix(), noisy_w(0.5).matrix()) == 0.0);
        CHECK(max_abs_diff(parse_state_spec("gghz:0.4077").matrix(), gghz_state(0.4077).matrix()) == 0.0);
        const auto b = parse_state_spec("biseparable:B-AC:0:0:psi-");
        const std::array<complex, 2> zero{1.0, 0.0};
        CHECK(max_abs_diff(b.matrix(),
                           biseparable_state(Bipartition::B_AC, zero, bell_state(BellState::PsiMinus)).matrix()) <= 1e-15);
        CHECK_NOTHROW(parse_state_spec("biseparable:C|AB:1.0:0.5:phi+"));
        for (const char* bad : {"foo", "noisy-w", "noisy-w:abc", "gghz:0.3:1", "biseparable:A|BC:0:0:xx",
                                "biseparable:D|BC:0:0:phi+"})
            CHECK_THROWS_AS(parse_state_spec(bad), InputError);
        CHECK_THROWS_AS(parse_state_spec("noisy-w:1.5"), ParameterError);
        CHECK_THROWS_AS(parse_state_spec("gghz:2"), ParameterError);
    }

    TEST_CASE("CSV order") {
        const auto csv = to_csv(Behavior::deterministic(2, 0, 0));
        std::istringstream in(csv);
        std::string line;
        std::vector<std::string> lines;
        while (std::getline(in, line)) lines.push_back(line);
        REQUIRE(lines.size() == 65);
        CHECK(lines[0] == "x,y,z,a,b,c,p");
        CHECK(lines[1] == "0,0,0,0,0,0,1");
        CHECK(lines[1 + 32] == "1,0,0,0,0,0,0");
        CHECK(lines[1 + 36] == "1,0,0,1,0,0,1");
    }

    TEST_CASE("witness report JSON") {
        const auto j = to_json(witness_report(Behavior::white_noise()));
        for (const char* key : {"mermin", "mermin_family", "q_value", "svetlichny", "marginal_profile", "verdicts",
                                "assumptions", "certificate", "interpretations"})
            CHECK(j.contains(key));
        CHECK(j["mermin_family"].size() == 8);
        CHECK(j["mermin_family"].contains("101"));
        CHECK(j["certificate"]["verdict"] == "not_certified");
    }

    TEST_CASE("appendix reproductions") {
        const auto a = reproduce(Appendix::a);
        CHECK(a.rows.size() == 9);
        CHECK(a.rows[0].pass.value_or(false));
        REQUIRE(a.rows[1].reference);
        CHECK(*a.rows[1].reference == 0.289527);
        CHECK(*a.rows[2].reference == 0.18599);
        CHECK(a.witness.certificate.verdict == Verdict::GME_certified);
        const auto b = reproduce(Appendix::b);
        CHECK(b.all_pass());
        int unasserted = 0;
        for (const auto& row : b.rows) unasserted += !row.pass.has_value();
        CHECK(unasserted == 3);
        CHECK(to_table(b).find("Mermin") != std::string::npos);
        CHECK(to_json(b)["all_pass"] == true);
        CHECK(parse_appendix("appendix-a") == Appendix::a);
        CHECK_FALSE(parse_appendix("appendix-c"));
    }
}
