#include "wk/model.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace wk {

char direction_char(Direction d) {
    switch (d) {
        case Direction::Left: return 'L';
        case Direction::Right: return 'R';
        case Direction::Stay: return '0';
    }
    return '?';
}

std::optional<Direction> direction_from_char(char c) {
    switch (c) {
        case 'L': return Direction::Left;
        case 'R': return Direction::Right;
        case '0': return Direction::Stay;
        default: return std::nullopt;
    }
}

StrandRead lambda_read() { return {"", Direction::Stay}; }

StrandRead read_of(std::string word, Direction dir) { return {std::move(word), dir}; }

namespace {

std::string read_text(const StrandRead& r) {
    std::string out = "(";
    out += r.word.empty() ? "_" : r.word;
    out += ',';
    out += direction_char(r.dir);
    out += ')';
    return out;
}

std::string word_text(const std::string& w) {
    std::string out = "(";
    out += w.empty() ? "_" : w;
    out += ')';
    return out;
}

}  // namespace

std::string to_text(const TwoWayTransition& t) {
    return t.from + " " + read_text(t.upper) + read_text(t.lower) + " " + t.to;
}

std::string to_text(const OneWayTransition& t) {
    return t.from + " " + word_text(t.upper) + word_text(t.lower) + " " + t.to;
}

bool TwoWayMachine::is_final(std::string_view q) const {
    return std::find(finals.begin(), finals.end(), q) != finals.end();
}

std::optional<std::size_t> TwoWayMachine::state_index(std::string_view q) const {
    auto it = std::find(states.begin(), states.end(), q);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

bool OneWayMachine::is_final(std::string_view q) const {
    return std::find(finals.begin(), finals.end(), q) != finals.end();
}

std::optional<std::size_t> OneWayMachine::state_index(std::string_view q) const {
    auto it = std::find(states.begin(), states.end(), q);
    if (it == states.end()) return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

namespace {

template <typename Machine>
bool structurally_equal_impl(const Machine& a, const Machine& b) {
    if (a.alphabet != b.alphabet || a.rho != b.rho) return false;
    if (a.states != b.states || a.initial != b.initial) return false;
    std::set<std::string> fa(a.finals.begin(), a.finals.end());
    std::set<std::string> fb(b.finals.begin(), b.finals.end());
    if (fa != fb) return false;
    auto ta = a.transitions;
    auto tb = b.transitions;
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return ta == tb;
}

}  // namespace

bool structurally_equal(const TwoWayMachine& a, const TwoWayMachine& b) {
    return structurally_equal_impl(a, b);
}

bool structurally_equal(const OneWayMachine& a, const OneWayMachine& b) {
    return structurally_equal_impl(a, b);
}

namespace {

template <typename Machine>
void check_skeleton(const Machine& m, std::vector<Violation>& out) {
    if (m.alphabet.empty())
        out.push_back({ViolationKind::EmptyAlphabet, "alphabet is empty", {}});
    if (m.rho.alphabet() != m.alphabet)
        out.push_back({ViolationKind::AlphabetMismatch,
                       "complementarity relation is over a different alphabet", {}});
    std::set<std::string> seen;
    for (const auto& q : m.states)
        if (!seen.insert(q).second)
            out.push_back({ViolationKind::DuplicateState, "duplicate state '" + q + "'", {}});
    auto known = [&](const std::string& q) { return seen.count(q) != 0; };
    if (!known(m.initial))
        out.push_back({ViolationKind::DanglingState,
                       "initial state '" + m.initial + "' is not declared", {}});
    for (const auto& q : m.finals)
        if (!known(q))
            out.push_back({ViolationKind::DanglingState,
                           "final state '" + q + "' is not declared", {}});
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        if (!known(t.from))
            out.push_back({ViolationKind::DanglingState,
                           "source state '" + t.from + "' is not declared", i});
        if (!known(t.to))
            out.push_back({ViolationKind::DanglingState,
                           "target state '" + t.to + "' is not declared", i});
    }
}

void check_read(const StrandRead& r, const Alphabet& alphabet, std::size_t index,
                const char* which, std::vector<Violation>& out) {
    const std::string label = std::string(which) + " read " + read_text(r);
    if (r.word.empty() && r.dir != Direction::Stay) {
        out.push_back({ViolationKind::LambdaWithDirection,
                       label + ": lambda read requires direction 0", index});
        return;
    }
    if (!r.word.empty() && r.dir == Direction::Stay) {
        out.push_back({ViolationKind::NonLambdaStationary,
                       label + ": direction 0 requires a lambda read", index});
        return;
    }
    for (std::size_t i = 0; i < r.word.size(); ++i) {
        char c = r.word[i];
        if (c != kLeftMarker && c != kRightMarker && !alphabet.contains(c)) {
            out.push_back({ViolationKind::UnknownSymbol,
                           label + ": symbol '" + std::string(1, c) +
                               "' is not in the alphabet", index});
            return;
        }
    }
    // Marker placement. '#' can only match as the first symbol of an R-read;
    // '$' as the last symbol of an R-read or the first of an L-read. An
    // L-read ending in '#' is the form the left-edge restriction forbids.
    if (r.dir == Direction::Left && r.word.back() == kLeftMarker) {
        out.push_back({ViolationKind::LeftReadEndsWithHash,
                       label + ": L-read ends with '#'", index});
        return;
    }
    for (std::size_t i = 0; i < r.word.size(); ++i) {
        char c = r.word[i];
        if (c == kLeftMarker) {
            bool ok = r.dir == Direction::Right && i == 0;
            if (!ok) {
                out.push_back({ViolationKind::MisplacedMarker,
                               label + ": '#' can only start an R-read", index});
                return;
            }
        } else if (c == kRightMarker) {
            bool ok = (r.dir == Direction::Right && i + 1 == r.word.size()) ||
                      (r.dir == Direction::Left && i == 0);
            if (!ok) {
                out.push_back({ViolationKind::MisplacedMarker,
                               label + ": '$' can only end an R-read or start an L-read",
                               index});
                return;
            }
        }
    }
}

}  // namespace

std::vector<Violation> validate(const TwoWayMachine& m) {
    std::vector<Violation> out;
    check_skeleton(m, out);
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        check_read(t.upper, m.alphabet, i, "upper", out);
        check_read(t.lower, m.alphabet, i, "lower", out);
        if (t.upper.is_lambda() && t.lower.is_lambda())
            out.push_back({ViolationKind::LambdaLambda,
                           "lambda/lambda transition " + to_text(t), i});
    }
    return out;
}

std::vector<Violation> validate(const OneWayMachine& m) {
    std::vector<Violation> out;
    check_skeleton(m, out);
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        for (const std::string* w : {&t.upper, &t.lower}) {
            for (char c : *w) {
                if (c == kLeftMarker || c == kRightMarker) {
                    out.push_back({ViolationKind::MarkerInOneWay,
                                   "marker '" + std::string(1, c) +
                                       "' in one-way rule " + to_text(t), i});
                } else if (!m.alphabet.contains(c)) {
                    out.push_back({ViolationKind::UnknownSymbol,
                                   "symbol '" + std::string(1, c) +
                                       "' is not in the alphabet", i});
                }
            }
        }
    }
    return out;
}

SubclassFlags classify_subclass(const TwoWayMachine& m) {
    SubclassFlags f;
    std::set<std::string> states(m.states.begin(), m.states.end());
    std::set<std::string> finals(m.finals.begin(), m.finals.end());
    f.all_final = !states.empty() && states == finals;
    f.stateless = f.all_final && states.size() == 1 && states.count(m.initial);
    f.simple = true;
    f.one_limited = true;
    for (const auto& t : m.transitions) {
        if (!t.upper.is_lambda() && !t.lower.is_lambda()) f.simple = false;
        if (t.upper.word.size() + t.lower.word.size() != 1) f.one_limited = false;
    }
    return f;
}

namespace {

bool reads_conflict(const StrandRead& a, const StrandRead& b) {
    if (a.is_lambda() || b.is_lambda()) return true;
    if (a.dir == b.dir) return prefix_comparable(a.word, b.word);
    return a.word.front() == b.word.front();
}

}  // namespace

DeterminismReport is_deterministic(const OneWayMachine& m) {
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        for (std::size_t j = i + 1; j < m.transitions.size(); ++j) {
            const auto& a = m.transitions[i];
            const auto& b = m.transitions[j];
            if (a.from != b.from || a == b) continue;  // the rule set ignores duplicates
            if (prefix_comparable(a.upper, b.upper) && prefix_comparable(a.lower, b.lower))
                return {false, std::make_pair(i, j)};
        }
    }
    return {};
}

DeterminismReport is_deterministic_two_way(const TwoWayMachine& m) {
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        for (std::size_t j = i + 1; j < m.transitions.size(); ++j) {
            const auto& a = m.transitions[i];
            const auto& b = m.transitions[j];
            if (a.from != b.from || a == b) continue;
            if (reads_conflict(a.upper, b.upper) && reads_conflict(a.lower, b.lower))
                return {false, std::make_pair(i, j)};
        }
    }
    return {};
}

TransitionClass classify_transition(const TwoWayTransition& t) {
    if (t.upper.left_dollar() || t.lower.left_dollar()) return TransitionClass::Class5;
    const bool upper_falls = t.upper.falls();
    const bool lower_falls = t.lower.falls();
    if (upper_falls && lower_falls) return TransitionClass::Class2;
    if (upper_falls) return TransitionClass::Class3;
    if (lower_falls) return TransitionClass::Class4;
    return TransitionClass::Class1;
}

TwoWayMachine eliminate_lambda_lambda(const TwoWayMachine& m) {
    std::vector<std::size_t> lambda_rules;
    for (std::size_t i = 0; i < m.transitions.size(); ++i)
        if (m.transitions[i].upper.is_lambda() && m.transitions[i].lower.is_lambda())
            lambda_rules.push_back(i);
    if (lambda_rules.empty()) return m;

    // lambda-closure per state, BFS in rule order for determinism
    std::map<std::string, std::vector<std::string>> closure;
    for (const auto& q : m.states) {
        std::vector<std::string> order{q};
        std::set<std::string> seen{q};
        std::deque<std::string> todo{q};
        while (!todo.empty()) {
            std::string cur = todo.front();
            todo.pop_front();
            for (std::size_t i : lambda_rules) {
                const auto& t = m.transitions[i];
                if (t.from == cur && seen.insert(t.to).second) {
                    order.push_back(t.to);
                    todo.push_back(t.to);
                }
            }
        }
        closure[q] = std::move(order);
    }

    TwoWayMachine out;
    out.alphabet = m.alphabet;
    out.rho = m.rho;
    out.states = m.states;

    std::set<TwoWayTransition> seen_rules;
    auto emit = [&](TwoWayTransition t) {
        if (seen_rules.insert(t).second) out.transitions.push_back(std::move(t));
    };
    for (const auto& t : m.transitions) {
        if (t.upper.is_lambda() && t.lower.is_lambda()) continue;
        for (const auto& target : closure[t.to])
            emit({t.from, t.upper, t.lower, target});
    }

    // a state that lambda-reaches a final state is itself final
    std::set<std::string> finals(m.finals.begin(), m.finals.end());
    for (const auto& q : m.states) {
        bool is_final = std::any_of(closure[q].begin(), closure[q].end(),
                                    [&](const std::string& r) { return finals.count(r); });
        if (is_final) out.finals.push_back(q);
    }

    const auto& init_closure = closure[m.initial];
    if (init_closure.size() == 1) {
        out.initial = m.initial;
    } else {
        std::string fresh = m.initial + "'";
        std::set<std::string> used(m.states.begin(), m.states.end());
        while (used.count(fresh)) fresh += "'";
        out.states.push_back(fresh);
        std::vector<TwoWayTransition> borrowed;
        for (const auto& q : init_closure)
            for (const auto& t : out.transitions)
                if (t.from == q) borrowed.push_back({fresh, t.upper, t.lower, t.to});
        for (auto& t : borrowed) emit(std::move(t));
        bool fresh_final = std::any_of(init_closure.begin(), init_closure.end(),
                                       [&](const std::string& r) { return finals.count(r); });
        if (fresh_final) out.finals.push_back(fresh);
        out.initial = fresh;
    }
    return out;
}

}  // namespace wk
