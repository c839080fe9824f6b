#include "wk/sim.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace wk {

std::string_view outcome_name(Outcome o) {
    return o == Outcome::Accept ? "accept" : "reject";
}

std::string_view reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::NoAcceptingRun: return "no_accepting_run";
        case RejectReason::Loop: return "loop";
        case RejectReason::Halt: return "halt";
        case RejectReason::FellOffNonFinal: return "fell_off_nonfinal";
    }
    return "?";
}

namespace {

// Match under encounter-order semantics; a fallen-off head (pos == len)
// matches only lambda.
bool read_matches(const std::string& tape, std::size_t pos, const StrandRead& r) {
    if (r.word.empty()) return true;
    const std::size_t len = tape.size();
    if (pos >= len) return false;
    const std::size_t k = r.word.size();
    if (r.dir == Direction::Right) {
        if (pos + k > len) return false;
        return tape.compare(pos, k, r.word) == 0;
    }
    // Left: cells pos, pos-1, ..., pos-k+1. Landing at -1 would require the
    // word to end in '#', which validation forbids, so k <= pos suffices.
    if (k > pos) return false;
    for (std::size_t i = 0; i < k; ++i)
        if (tape[pos - i] != r.word[i]) return false;
    return true;
}

std::size_t read_target(std::size_t pos, const StrandRead& r) {
    switch (r.dir) {
        case Direction::Right: return pos + r.word.size();
        case Direction::Left: return pos - r.word.size();
        case Direction::Stay: return pos;
    }
    return pos;
}

struct Indexed {
    std::unordered_map<std::string, int> state_of;
    std::vector<std::vector<std::size_t>> rules_by_state;
    std::vector<char> final_by_state;
    int initial = -1;

    template <typename Machine>
    explicit Indexed(const Machine& m) {
        state_of.reserve(m.states.size());
        for (std::size_t i = 0; i < m.states.size(); ++i)
            state_of.emplace(m.states[i], static_cast<int>(i));
        rules_by_state.resize(m.states.size());
        final_by_state.assign(m.states.size(), 0);
        for (std::size_t i = 0; i < m.transitions.size(); ++i)
            rules_by_state[state_of.at(m.transitions[i].from)].push_back(i);
        for (const auto& q : m.finals) final_by_state[state_of.at(q)] = 1;
        initial = state_of.at(m.initial);
    }
};

void require_word(const Alphabet& alphabet, std::string_view word) {
    for (char c : word)
        if (!alphabet.contains(c))
            throw std::invalid_argument(std::string("word symbol '") + c +
                                        "' is not in the alphabet");
}

struct StrandSearch {
    bool accepted = false;
    std::size_t explored = 0;
    std::vector<TraceStep> witness;  // filled on accept
};

// BFS over one fixed double tape. Accepting configurations are recognized on
// visit: final state with both heads fallen off.
StrandSearch search_strand(const TwoWayMachine& m, const Indexed& ix,
                           const DoubleStrand& ds) {
    const std::size_t len = ds.length();
    const std::size_t positions = len + 1;
    const std::size_t nodes = m.states.size() * positions * positions;
    auto encode = [&](int s, std::size_t u, std::size_t l) {
        return (static_cast<std::size_t>(s) * positions + u) * positions + l;
    };

    std::vector<char> visited(nodes, 0);
    std::vector<std::int64_t> parent(nodes, -1);
    std::vector<std::size_t> parent_rule(nodes, 0);
    std::deque<std::size_t> frontier;

    StrandSearch result;
    const std::size_t start = encode(ix.initial, 0, 0);
    visited[start] = 1;
    result.explored = 1;
    frontier.push_back(start);

    std::size_t accept_node = nodes;  // sentinel
    while (!frontier.empty()) {
        const std::size_t node = frontier.front();
        frontier.pop_front();
        const std::size_t l = node % positions;
        const std::size_t u = (node / positions) % positions;
        const int s = static_cast<int>(node / (positions * positions));
        if (ix.final_by_state[s] && u == len && l == len) {
            accept_node = node;
            break;
        }
        for (std::size_t rule : ix.rules_by_state[s]) {
            const auto& t = m.transitions[rule];
            if (!read_matches(ds.upper.cells, u, t.upper)) continue;
            if (!read_matches(ds.lower.cells, l, t.lower)) continue;
            const std::size_t nu = read_target(u, t.upper);
            const std::size_t nl = read_target(l, t.lower);
            const std::size_t next = encode(ix.state_of.at(t.to), nu, nl);
            if (visited[next]) continue;
            visited[next] = 1;
            parent[next] = static_cast<std::int64_t>(node);
            parent_rule[next] = rule;
            ++result.explored;
            frontier.push_back(next);
        }
    }
    if (result.explored > nodes)
        throw std::logic_error("configuration bound exceeded");

    if (accept_node != nodes) {
        result.accepted = true;
        std::vector<TraceStep> rev;
        for (std::size_t node = accept_node; parent[node] >= 0;
             node = static_cast<std::size_t>(parent[node])) {
            const std::size_t l = node % positions;
            const std::size_t u = (node / positions) % positions;
            const int s = static_cast<int>(node / (positions * positions));
            rev.push_back({parent_rule[node], {m.states[s], u, l}});
        }
        result.witness.assign(rev.rbegin(), rev.rend());
    }
    return result;
}

}  // namespace

std::size_t configuration_bound(const TwoWayMachine& m, std::string_view word) {
    const std::size_t positions = word.size() + 3;  // len+1 with len = |word|+2
    return m.states.size() * positions * positions;
}

std::vector<std::size_t> applicable(const TwoWayMachine& m, const DoubleStrand& ds,
                                    const Configuration& c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        if (t.from != c.state) continue;
        if (read_matches(ds.upper.cells, c.upper_pos, t.upper) &&
            read_matches(ds.lower.cells, c.lower_pos, t.lower))
            out.push_back(i);
    }
    return out;
}

Configuration step(const TwoWayMachine& m, const DoubleStrand& ds,
                   const Configuration& c, std::size_t rule) {
    const auto& t = m.transitions.at(rule);
    if (t.from != c.state || !read_matches(ds.upper.cells, c.upper_pos, t.upper) ||
        !read_matches(ds.lower.cells, c.lower_pos, t.lower))
        throw std::invalid_argument("transition " + to_text(t) +
                                    " is not applicable in state " + c.state);
    return {t.to, read_target(c.upper_pos, t.upper), read_target(c.lower_pos, t.lower)};
}

RunReport run_two_way(const TwoWayMachine& m, std::string_view word) {
    require_word(m.alphabet, word);
    const Indexed ix(m);

    RunReport report;
    LowerStrandStream strands(m.rho, word);
    while (auto lower = strands.next()) {
        const DoubleStrand ds = DoubleStrand::from_words(word, *lower);
        StrandSearch found = search_strand(m, ix, ds);
        report.strands.push_back({*lower, found.explored});
        report.explored_total += found.explored;
        if (found.accepted) {
            report.verdict.outcome = Outcome::Accept;
            report.verdict.witness_lower = *lower;
            for (const auto& s : found.witness) report.verdict.witness_rules.push_back(s.rule);
            report.trace = std::move(found.witness);
            return report;
        }
    }
    report.verdict.outcome = Outcome::Reject;
    report.verdict.reason = RejectReason::NoAcceptingRun;
    return report;
}

Verdict accepts_two_way(const TwoWayMachine& m, std::string_view word) {
    return run_two_way(m, word).verdict;
}

RunReport trace_deterministic(const TwoWayMachine& m, std::string_view word) {
    require_word(m.alphabet, word);
    if (!is_deterministic_two_way(m).deterministic)
        throw std::invalid_argument("machine is not deterministic");

    LowerStrandStream strands(m.rho, word);
    auto first = strands.next();
    if (first && strands.next())
        throw std::invalid_argument(
            "relation admits more than one lower strand for this word");

    RunReport report;
    if (!first) {  // no complementary strand: the run cannot start
        report.verdict.outcome = Outcome::Reject;
        report.verdict.reason = RejectReason::Halt;
        return report;
    }

    const DoubleStrand ds = DoubleStrand::from_words(word, *first);
    const std::size_t len = ds.length();
    report.strands.push_back({*first, 0});

    Configuration c{m.initial, 0, 0};
    std::set<std::pair<std::string, std::pair<std::size_t, std::size_t>>> seen;
    auto key = [](const Configuration& cfg) {
        return std::make_pair(cfg.state, std::make_pair(cfg.upper_pos, cfg.lower_pos));
    };
    seen.insert(key(c));
    report.strands.back().explored = 1;

    for (;;) {
        const bool both_off = c.upper_pos == len && c.lower_pos == len;
        if (both_off) {
            if (m.is_final(c.state)) {
                report.verdict.outcome = Outcome::Accept;
                report.verdict.witness_lower = *first;
                for (const auto& s : report.trace)
                    report.verdict.witness_rules.push_back(s.rule);
            } else {
                report.verdict.outcome = Outcome::Reject;
                report.verdict.reason = RejectReason::FellOffNonFinal;
            }
            break;
        }
        auto rules = applicable(m, ds, c);
        if (rules.empty()) {
            report.verdict.outcome = Outcome::Reject;
            report.verdict.reason = RejectReason::Halt;
            break;
        }
        if (rules.size() > 1)
            throw std::invalid_argument("nondeterministic branch at (" + c.state + "," +
                                        std::to_string(c.upper_pos) + "," +
                                        std::to_string(c.lower_pos) + ")");
        c = step(m, ds, c, rules.front());
        report.trace.push_back({rules.front(), c});
        if (!seen.insert(key(c)).second) {
            report.verdict.outcome = Outcome::Reject;
            report.verdict.reason = RejectReason::Loop;
            break;
        }
        report.strands.back().explored += 1;
    }
    report.explored_total = report.strands.back().explored;
    return report;
}

RunReport run_one_way(const OneWayMachine& m, std::string_view word) {
    require_word(m.alphabet, word);
    const Indexed ix(m);
    const std::size_t n = word.size();
    const std::size_t span = n + 1;
    const std::size_t nodes = m.states.size() * span * span;
    auto encode = [&](int s, std::size_t i, std::size_t j) {
        return (static_cast<std::size_t>(s) * span + i) * span + j;
    };

    std::vector<char> visited(nodes, 0);
    std::vector<std::int64_t> parent(nodes, -1);
    std::vector<std::size_t> parent_rule(nodes, 0);
    std::deque<std::size_t> frontier;

    RunReport report;
    const std::size_t start = encode(ix.initial, 0, 0);
    visited[start] = 1;
    std::size_t explored = 1;
    frontier.push_back(start);

    std::size_t accept_node = nodes;
    while (!frontier.empty()) {
        const std::size_t node = frontier.front();
        frontier.pop_front();
        const std::size_t j = node % span;
        const std::size_t i = (node / span) % span;
        const int s = static_cast<int>(node / (span * span));
        if (ix.final_by_state[s] && i == n && j == n) {
            accept_node = node;
            break;
        }
        for (std::size_t rule : ix.rules_by_state[s]) {
            const auto& t = m.transitions[rule];
            if (i + t.upper.size() > n || word.compare(i, t.upper.size(), t.upper) != 0)
                continue;
            if (j + t.lower.size() > n) continue;
            bool complementary = true;
            for (std::size_t k = 0; k < t.lower.size(); ++k) {
                if (!m.rho.related(word[j + k], t.lower[k])) {
                    complementary = false;
                    break;
                }
            }
            if (!complementary) continue;
            const std::size_t next =
                encode(ix.state_of.at(t.to), i + t.upper.size(), j + t.lower.size());
            if (visited[next]) continue;
            visited[next] = 1;
            parent[next] = static_cast<std::int64_t>(node);
            parent_rule[next] = rule;
            ++explored;
            frontier.push_back(next);
        }
    }
    if (explored > nodes) throw std::logic_error("configuration bound exceeded");
    report.explored_total = explored;

    if (accept_node == nodes) {
        report.verdict.outcome = Outcome::Reject;
        report.verdict.reason = RejectReason::NoAcceptingRun;
        return report;
    }
    report.verdict.outcome = Outcome::Accept;
    std::vector<TraceStep> rev;
    for (std::size_t node = accept_node; parent[node] >= 0;
         node = static_cast<std::size_t>(parent[node])) {
        const std::size_t j = node % span;
        const std::size_t i = (node / span) % span;
        const int s = static_cast<int>(node / (span * span));
        rev.push_back({parent_rule[node], {m.states[s], i, j}});
    }
    report.trace.assign(rev.rbegin(), rev.rend());
    std::string lower;
    for (const auto& s : report.trace) {
        report.verdict.witness_rules.push_back(s.rule);
        lower += m.transitions[s.rule].lower;
    }
    report.verdict.witness_lower = lower;
    report.strands.push_back({lower, explored});
    return report;
}

Verdict accepts_one_way(const OneWayMachine& m, std::string_view word) {
    return run_one_way(m, word).verdict;
}

bool replay_trace(const TwoWayMachine& m, std::string_view word, const RunReport& report) {
    std::string lower;
    if (report.verdict.witness_lower)
        lower = *report.verdict.witness_lower;
    else if (!report.strands.empty())
        lower = report.strands.front().lower;
    else
        return report.trace.empty();

    const DoubleStrand ds = DoubleStrand::from_words(word, lower);
    const std::size_t len = ds.length();
    Configuration c{m.initial, 0, 0};
    std::vector<Configuration> seen{c};
    for (const auto& s : report.trace) {
        auto rules = applicable(m, ds, c);
        if (std::find(rules.begin(), rules.end(), s.rule) == rules.end()) return false;
        c = step(m, ds, c, s.rule);
        if (!(c == s.after)) return false;
        seen.push_back(c);
    }
    const bool both_off = c.upper_pos == len && c.lower_pos == len;
    if (report.verdict.accepted()) return both_off && m.is_final(c.state);
    if (!report.verdict.reason) return false;
    switch (*report.verdict.reason) {
        case RejectReason::FellOffNonFinal:
            return both_off && !m.is_final(c.state);
        case RejectReason::Halt:
            return !both_off && applicable(m, ds, c).empty();
        case RejectReason::Loop:
            return std::count(seen.begin(), seen.end(), c) > 1;
        case RejectReason::NoAcceptingRun:
            return true;  // no single-run trace to replay
    }
    return false;
}

}  // namespace wk
