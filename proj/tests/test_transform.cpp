#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "wk/lang.hpp"
#include "wk/sim.hpp"
#include "wk/transform.hpp"

using namespace wk;

namespace {

TwoWayMachine two_state_machine() {
    TwoWayMachine m;
    m.alphabet = Alphabet("ab");
    m.rho = ComplementarityRelation::identity(m.alphabet);
    m.states = {"q0", "q1"};
    m.initial = "q0";
    return m;
}

std::size_t out_degree(const TwoWayMachine& m, const std::string& q) {
    return static_cast<std::size_t>(
        std::count_if(m.transitions.begin(), m.transitions.end(),
                      [&](const TwoWayTransition& t) { return t.from == q; }));
}

}  // namespace

TEST_CASE("to_all_final on the gallery machine") {
    const auto m = gallery_ww();
    const auto result = to_all_final(m);

    CHECK(classify_subclass(result.machine).all_final);
    CHECK(validate(result.machine).empty());
    CHECK(out_degree(result.machine, result.dead) == 0);

    // language preserved: still exactly {ww}
    auto sample = language_sample(result.machine, 8);
    for (const auto& w : enumerate_words(m.alphabet, 8)) {
        bool in_sample = std::binary_search(sample.accepted.begin(), sample.accepted.end(),
                                            w, [](const std::string& x, const std::string& y) {
                                                return x.size() != y.size()
                                                           ? x.size() < y.size()
                                                           : x < y;
                                            });
        CHECK(in_sample == ww_oracle(w));
    }

    // the upper-fall rule is redirected through qD's upper shadow
    REQUIRE(result.state_map.count("qD"));
    CHECK(result.state_map.at("qD").upper_shadow.has_value());
}

TEST_CASE("both-falling rules into non-final states go to the dead sink") {
    auto m = two_state_machine();
    m.finals = {"q0"};  // q1 is not final
    m.transitions = {{"q0",
                      {"ab$", Direction::Right},
                      {"b$", Direction::Right},
                      "q1"}};
    REQUIRE(validate(m).empty());

    const auto result = to_all_final(m);
    TwoWayTransition expected{"q0",
                              {"ab", Direction::Right},
                              {"b", Direction::Right},
                              result.dead};
    CHECK(std::find(result.machine.transitions.begin(), result.machine.transitions.end(),
                    expected) != result.machine.transitions.end());
    CHECK(language_sample(result.machine, 4).accepted.empty());
    CHECK(language_sample(m, 4).accepted.empty());
}

TEST_CASE("already all-final machines only gain the dead sink") {
    auto m = two_state_machine();
    m.finals = m.states;
    m.transitions = {
        {"q0", {"#", Direction::Right}, {"#", Direction::Right}, "q1"},
        {"q1", {"a", Direction::Right}, {"a", Direction::Right}, "q1"},
        {"q1", lambda_read(), {"b", Direction::Left}, "q0"},
    };
    REQUIRE(validate(m).empty());

    const auto result = to_all_final(m);
    auto expected = m.transitions;
    auto got = result.machine.transitions;
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
    CHECK(result.machine.states.size() == m.states.size() + 1);  // + dead
    CHECK(equivalent_up_to(m, result.machine, 5).equivalent);
}

TEST_CASE("lambda/lambda rules must be eliminated first") {
    auto m = two_state_machine();
    m.finals = {"q1"};
    m.transitions = {{"q0", lambda_read(), lambda_read(), "q1"}};
    CHECK_THROWS_WITH_AS(to_all_final(m),
                         "machine has lambda/lambda transitions; run "
                         "eliminate_lambda_lambda first",
                         std::invalid_argument);
}

TEST_CASE("explain_construction") {
    SUBCASE("gallery ledger") {
        const auto report = explain_construction(gallery_ww());
        REQUIRE(report.rules.size() == gallery_ww().transitions.size());
        bool saw_upper_fall = false, saw_class5_copy = false;
        for (const auto& e : report.rules) {
            if (e.original.from == "qC" && e.cls == TransitionClass::Class3) {
                saw_upper_fall = true;
                REQUIRE(e.emitted.size() == 1);
                // stripping "$" leaves a stationary lambda read on both strands
                CHECK(e.emitted[0].upper == lambda_read());
                CHECK(e.emitted[0].lower == lambda_read());
                CHECK(e.emitted[0].to == "qD_us");
            }
            if (e.cls == TransitionClass::Class5) {
                saw_class5_copy = true;
                CHECK(e.action == "copied");
                CHECK(e.emitted == std::vector<TwoWayTransition>{e.original});
            }
        }
        CHECK(saw_upper_fall);
        CHECK(saw_class5_copy);
        CHECK(report.lambda_folded);
        CHECK(report.to_text().find("class 3") != std::string::npos);
    }
    SUBCASE("plain rules are copied") {
        auto m = two_state_machine();
        m.finals = {"q1"};
        m.transitions = {
            {"q0", {"a", Direction::Right}, {"b", Direction::Left}, "q1"},
            {"q1", {"$", Direction::Left}, {"$", Direction::Left}, "q0"},
        };
        const auto report = explain_construction(m);
        CHECK(report.rules[0].cls == TransitionClass::Class1);
        CHECK(report.rules[0].action == "copied");
        CHECK(report.rules[1].cls == TransitionClass::Class5);
        CHECK(report.rules[1].action == "copied");
        CHECK_FALSE(report.lambda_folded);
    }
}

TEST_CASE("shadow names avoid collisions with existing states") {
    TwoWayMachine m;
    m.alphabet = Alphabet("a");
    m.rho = ComplementarityRelation::identity(m.alphabet);
    m.states = {"q0", "q1", "q1_us", "dead"};
    m.initial = "q0";
    m.finals = {"q1_us"};
    m.transitions = {
        {"q0", {"a$", Direction::Right}, {"a", Direction::Right}, "q1"},
        {"q1", lambda_read(), {"a", Direction::Right}, "q1_us"},
    };
    REQUIRE(validate(m).empty());
    const auto result = to_all_final(m);
    CHECK(validate(result.machine).empty());
    std::set<std::string> names(result.machine.states.begin(), result.machine.states.end());
    CHECK(names.size() == result.machine.states.size());
    CHECK(result.dead != "dead");  // the original "dead" was a user state
    CHECK(equivalent_up_to(m, result.machine, 5).equivalent);
}

TEST_CASE("a lambda/lambda fold from the initial state introduces a fresh initial") {
    TwoWayMachine m;
    m.alphabet = Alphabet("a");
    m.rho = ComplementarityRelation::identity(m.alphabet);
    m.states = {"q0", "q1"};
    m.initial = "q0";
    m.finals = {};
    m.transitions = {{"q0", {"$", Direction::Right}, lambda_read(), "q1"}};
    REQUIRE(validate(m).empty());
    const auto result = to_all_final(m);
    CHECK(validate(result.machine).empty());
    CHECK(classify_subclass(result.machine).all_final);
    CHECK(equivalent_up_to(m, result.machine, 5).equivalent);
}

TEST_CASE("random corpus: all-final, valid, language-preserving") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto m = random_machine(seed);
        const auto result = to_all_final(m);
        CHECK(classify_subclass(result.machine).all_final);
        CHECK(validate(result.machine).empty());
        CHECK(out_degree(result.machine, result.dead) == 0);
        auto report = equivalent_up_to(m, result.machine, 5);
        if (!report.equivalent) {
            CAPTURE(seed);
            CAPTURE(*report.counterexample);
            CAPTURE(report.only_accepted_by);
            CHECK(report.equivalent);
        }
    }
}

TEST_CASE("disabling the prune flag keeps every created shadow") {
    const auto m = gallery_ww();
    const auto pruned = to_all_final(m);
    const auto unpruned = to_all_final(m, {.prune_unreachable_shadows = false});
    CHECK(unpruned.machine.states.size() >= pruned.machine.states.size());
    CHECK(validate(unpruned.machine).empty());
    CHECK(equivalent_up_to(pruned.machine, unpruned.machine, 5).equivalent);
}
