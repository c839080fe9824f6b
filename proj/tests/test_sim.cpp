#include <doctest.h>

#include <set>
#include <stdexcept>
#include <tuple>

#include "wk/lang.hpp"
#include "wk/sim.hpp"

using namespace wk;

namespace {

std::size_t rule_index(const TwoWayMachine& m, const TwoWayTransition& t) {
    for (std::size_t i = 0; i < m.transitions.size(); ++i)
        if (m.transitions[i] == t) return i;
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("applicable") {
    const auto m = gallery_ww();
    const auto ds = DoubleStrand::from_words("aa", "aa");

    SUBCASE("middle found: only the lower $-rewind rule applies") {
        auto rules = applicable(m, ds, {"qA", 2, 3});
        REQUIRE(rules.size() == 1);
        CHECK(m.transitions[rules[0]] ==
              TwoWayTransition{"qA", lambda_read(), {"$", Direction::Left}, "qB"});
    }
    SUBCASE("initial configuration: exactly the marker rule") {
        auto rules = applicable(m, ds, {"q0", 0, 0});
        REQUIRE(rules.size() == 1);
        CHECK(rules[0] == 0);
    }
    SUBCASE("both heads fallen off admit nothing") {
        CHECK(applicable(m, ds, {"qF", 4, 4}).empty());
    }
}

TEST_CASE("step") {
    const auto m = gallery_ww();
    const auto ds = DoubleStrand::from_words("aa", "aa");
    const std::size_t race = rule_index(
        m, {"qA", {"a", Direction::Right}, {"aa", Direction::Right}, "qA"});
    const std::size_t upper_off =
        rule_index(m, {"qC", {"$", Direction::Right}, lambda_read(), "qD"});

    CHECK(step(m, ds, {"qA", 1, 1}, race) == Configuration{"qA", 2, 3});
    CHECK(step(m, ds, {"qC", 3, 2}, upper_off) == Configuration{"qD", 4, 2});

    // lower cell 3 is '$', so the a-rewind rule cannot fire there
    const std::size_t rewind =
        rule_index(m, {"qB", lambda_read(), {"a", Direction::Left}, "qB"});
    CHECK_THROWS_AS(step(m, ds, {"qB", 3, 3}, rewind), std::invalid_argument);
}

TEST_CASE("accepts_two_way on the gallery machine") {
    const auto m = gallery_ww();
    CHECK(accepts_two_way(m, "abab").accepted());
    CHECK_FALSE(accepts_two_way(m, "aba").accepted());
    CHECK(accepts_two_way(m, "").accepted());
    CHECK_THROWS_AS(accepts_two_way(m, "abc"), std::invalid_argument);

    SUBCASE("accepting verdicts carry a replayable witness") {
        auto report = run_two_way(m, "abab");
        REQUIRE(report.verdict.accepted());
        CHECK(report.verdict.witness_lower == "abab");
        CHECK(replay_trace(m, "abab", report));
    }
    SUBCASE("identity relation explores exactly one strand per word") {
        auto report = run_two_way(m, "abba");
        CHECK(report.strands.size() == 1);
        CHECK_FALSE(report.verdict.accepted());
        CHECK(report.verdict.reason == RejectReason::NoAcceptingRun);
    }
}

TEST_CASE("trace_deterministic") {
    const auto m = gallery_ww();

    SUBCASE("mismatch halts in the comparison phase") {
        auto report = trace_deterministic(m, "ab");
        CHECK_FALSE(report.verdict.accepted());
        CHECK(report.verdict.reason == RejectReason::Halt);
        REQUIRE(!report.trace.empty());
        CHECK(report.trace.back().after == Configuration{"qC", 2, 1});
        CHECK(replay_trace(m, "ab", report));
    }
    SUBCASE("aa is accepted in ten steps") {
        auto report = trace_deterministic(m, "aa");
        CHECK(report.verdict.accepted());
        CHECK(report.trace.size() == 10);
        CHECK(report.trace.back().after == Configuration{"qF", 4, 4});
        CHECK(replay_trace(m, "aa", report));
    }
    SUBCASE("a two-cycle over the same cells is reported as a loop") {
        TwoWayMachine loop;
        loop.alphabet = Alphabet("ab");
        loop.rho = ComplementarityRelation::identity(loop.alphabet);
        loop.states = {"q0", "q1", "q2"};
        loop.initial = "q0";
        loop.transitions = {
            {"q0", {"#", Direction::Right}, {"#", Direction::Right}, "q1"},
            {"q1", {"a", Direction::Right}, lambda_read(), "q2"},
            {"q2", {"a", Direction::Left}, lambda_read(), "q1"},
        };
        REQUIRE(validate(loop).empty());
        REQUIRE(is_deterministic_two_way(loop).deterministic);
        auto report = trace_deterministic(loop, "aa");
        CHECK_FALSE(report.verdict.accepted());
        CHECK(report.verdict.reason == RejectReason::Loop);
        CHECK(replay_trace(loop, "aa", report));
        CHECK(accepts_two_way(loop, "aa").accepted() == false);
    }
    SUBCASE("falling off in a non-final state is distinguished from halting") {
        TwoWayMachine m2;
        m2.alphabet = Alphabet("a");
        m2.rho = ComplementarityRelation::identity(m2.alphabet);
        m2.states = {"q0", "q1"};
        m2.initial = "q0";
        m2.transitions = {
            {"q0", {"#a$", Direction::Right}, {"#a$", Direction::Right}, "q1"},
        };
        REQUIRE(validate(m2).empty());
        auto report = trace_deterministic(m2, "a");
        CHECK(report.verdict.reason == RejectReason::FellOffNonFinal);
        CHECK(replay_trace(m2, "a", report));
    }
    SUBCASE("nondeterministic machines are refused") {
        TwoWayMachine nd;
        nd.alphabet = Alphabet("a");
        nd.rho = ComplementarityRelation::identity(nd.alphabet);
        nd.states = {"q0", "q1"};
        nd.initial = "q0";
        nd.transitions = {
            {"q0", {"#", Direction::Right}, lambda_read(), "q1"},
            {"q0", {"#", Direction::Right}, lambda_read(), "q0"},
        };
        CHECK_THROWS_AS(trace_deterministic(nd, "a"), std::invalid_argument);
    }
    SUBCASE("a relation with several lower strands per word is refused") {
        auto m2 = gallery_ww();
        m2.rho = ComplementarityRelation(m2.alphabet, {{'a', 'a'}, {'a', 'b'}, {'b', 'b'}});
        CHECK_THROWS_AS(trace_deterministic(m2, "a"), std::invalid_argument);
    }
    SUBCASE("a word with no complementary strand rejects without a run") {
        auto m2 = gallery_ww();
        m2.rho = ComplementarityRelation(m2.alphabet, {{'a', 'a'}});
        auto report = trace_deterministic(m2, "b");
        CHECK_FALSE(report.verdict.accepted());
        CHECK(report.verdict.reason == RejectReason::Halt);
        CHECK(report.trace.empty());
    }
}

TEST_CASE("engine and deterministic trace agree on the gallery machine") {
    const auto m = gallery_ww();
    const auto words = enumerate_words(m.alphabet, 8);
    const std::size_t bound_states = m.states.size();
    for (const auto& w : words) {
        auto bfs = run_two_way(m, w);
        auto det = trace_deterministic(m, w);
        CHECK(bfs.verdict.accepted() == det.verdict.accepted());
        // the search never exceeds |Q| * (len+1)^2 configurations per strand
        const std::size_t bound = bound_states * (w.size() + 3) * (w.size() + 3);
        CHECK(configuration_bound(m, w) == bound);
        for (const auto& s : bfs.strands) CHECK(s.explored <= bound);
        CHECK(det.explored_total <= bound);
        if (bfs.verdict.accepted()) CHECK(replay_trace(m, w, bfs));
    }
}

TEST_CASE("deterministic one-way machines never offer two applicable rules") {
    // runtime monitor backing the syntactic determinism check
    const auto m = gallery_anbn();
    REQUIRE(is_deterministic(m).deterministic);
    auto applicable_count = [&](const std::string& w, const std::string& state,
                                std::size_t i, std::size_t j) {
        std::size_t count = 0;
        for (const auto& t : m.transitions) {
            if (t.from != state) continue;
            if (i + t.upper.size() > w.size() ||
                w.compare(i, t.upper.size(), t.upper) != 0)
                continue;
            if (j + t.lower.size() > w.size()) continue;
            bool ok = true;
            for (std::size_t k = 0; k < t.lower.size(); ++k)
                if (!m.rho.related(w[j + k], t.lower[k])) ok = false;
            if (ok) ++count;
        }
        return count;
    };
    for (const auto& w : enumerate_words(m.alphabet, 5)) {
        // walk every reachable (state, consumed, consumed) triple
        std::set<std::tuple<std::string, std::size_t, std::size_t>> seen;
        std::vector<std::tuple<std::string, std::size_t, std::size_t>> todo{
            {m.initial, 0, 0}};
        seen.insert(todo.front());
        while (!todo.empty()) {
            auto [state, i, j] = todo.back();
            todo.pop_back();
            CHECK(applicable_count(w, state, i, j) <= 1);
            for (const auto& t : m.transitions) {
                if (t.from != state) continue;
                if (i + t.upper.size() > w.size() ||
                    w.compare(i, t.upper.size(), t.upper) != 0)
                    continue;
                if (j + t.lower.size() > w.size()) continue;
                bool ok = true;
                for (std::size_t k = 0; k < t.lower.size(); ++k)
                    if (!m.rho.related(w[j + k], t.lower[k])) ok = false;
                if (!ok) continue;
                auto next = std::make_tuple(t.to, i + t.upper.size(), j + t.lower.size());
                if (seen.insert(next).second) todo.push_back(next);
            }
        }
    }
}

TEST_CASE("accepts_one_way on the a^n b^n gallery machine") {
    const auto m = gallery_anbn();
    CHECK(accepts_one_way(m, "aabb").accepted());
    CHECK_FALSE(accepts_one_way(m, "abba").accepted());
    CHECK(accepts_one_way(m, "").accepted());
    CHECK_THROWS_AS(accepts_one_way(m, "abc"), std::invalid_argument);

    SUBCASE("the witness consumes both strands fully and monotonically") {
        auto report = run_one_way(m, "aabb");
        REQUIRE(report.verdict.accepted());
        CHECK(report.verdict.witness_lower == "aabb");
        std::size_t upper = 0, lower = 0;
        for (const auto& s : report.trace) {
            CHECK(s.after.upper_pos >= upper);
            CHECK(s.after.lower_pos >= lower);
            upper = s.after.upper_pos;
            lower = s.after.lower_pos;
        }
        CHECK(upper == 4);
        CHECK(lower == 4);
    }
    SUBCASE("rejections are reported as no accepting run") {
        auto report = run_one_way(m, "aab");
        CHECK(report.verdict.reason == RejectReason::NoAcceptingRun);
        CHECK(report.explored_total <= m.states.size() * 4 * 4);
    }
}
