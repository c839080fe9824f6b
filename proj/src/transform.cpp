#include "wk/transform.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace wk {

namespace {

// Drop the trailing '$' of a falling read; an emptied word becomes stationary.
StrandRead strip_fall(const StrandRead& r) {
    std::string w = r.word;
    w.pop_back();
    if (w.empty()) return lambda_read();
    return {std::move(w), Direction::Right};
}

struct Builder {
    const TwoWayMachine& m;
    ConstructionReport& report;

    std::set<std::string> used_names;
    std::map<std::string, std::string> upper_shadow_of;
    std::map<std::string, std::string> lower_shadow_of;
    std::vector<std::string> shadow_order;
    std::deque<std::string> upper_pending;
    std::deque<std::string> lower_pending;
    std::string dead;
    std::vector<TwoWayTransition> out;
    std::set<TwoWayTransition> seen;

    Builder(const TwoWayMachine& machine, ConstructionReport& rep)
        : m(machine), report(rep), used_names(m.states.begin(), m.states.end()) {
        dead = fresh("dead");
    }

    std::string fresh(std::string base) {
        while (used_names.count(base)) base += "'";
        used_names.insert(base);
        return base;
    }

    std::string upper_shadow(const std::string& q) {
        auto it = upper_shadow_of.find(q);
        if (it != upper_shadow_of.end()) return it->second;
        std::string name = fresh(q + "_us");
        upper_shadow_of.emplace(q, name);
        shadow_order.push_back(name);
        upper_pending.push_back(q);
        return name;
    }

    std::string lower_shadow(const std::string& q) {
        auto it = lower_shadow_of.find(q);
        if (it != lower_shadow_of.end()) return it->second;
        std::string name = fresh(q + "_ls");
        lower_shadow_of.emplace(q, name);
        shadow_order.push_back(name);
        lower_pending.push_back(q);
        return name;
    }

    void emit(TwoWayTransition t, RuleLedgerEntry* entry) {
        if (entry) entry->emitted.push_back(t);
        if (seen.insert(t).second) out.push_back(std::move(t));
    }

    void convert_rules() {
        for (std::size_t i = 0; i < m.transitions.size(); ++i) {
            const auto& t = m.transitions[i];
            RuleLedgerEntry entry{i, t, classify_transition(t), "", {}};
            const bool target_final = m.is_final(t.to);
            switch (entry.cls) {
                case TransitionClass::Class1:
                case TransitionClass::Class5:
                    entry.action = "copied";
                    emit(t, &entry);
                    break;
                case TransitionClass::Class2:
                    if (target_final) {
                        entry.action = "copied (target final)";
                        emit(t, &entry);
                    } else {
                        entry.action = "both falls withheld, redirected to dead";
                        emit({t.from, strip_fall(t.upper), strip_fall(t.lower), dead},
                             &entry);
                    }
                    break;
                case TransitionClass::Class3:
                    if (target_final) {
                        entry.action = "copied (target final)";
                        emit(t, &entry);
                    } else {
                        std::string target = upper_shadow(t.to);
                        entry.action = "upper fall withheld, redirected to " + target;
                        emit({t.from, strip_fall(t.upper), t.lower, target}, &entry);
                    }
                    break;
                case TransitionClass::Class4:
                    if (target_final) {
                        entry.action = "copied (target final)";
                        emit(t, &entry);
                    } else {
                        std::string target = lower_shadow(t.to);
                        entry.action = "lower fall withheld, redirected to " + target;
                        emit({t.from, t.upper, strip_fall(t.lower), target}, &entry);
                    }
                    break;
            }
            report.rules.push_back(std::move(entry));
        }
    }

    // Mirror the lambda-upper rules of p onto its upper shadow: the simulated
    // upper head is off the tape, so only those rules can fire. A rule whose
    // lower read falls is resolved now: into a plain final state while also
    // reading the withheld upper '$' (both heads really fall), or into dead.
    void close_upper(const std::string& p) {
        const std::string from = upper_shadow_of.at(p);
        for (std::size_t j = 0; j < m.transitions.size(); ++j) {
            const auto& t = m.transitions[j];
            if (t.from != p || !t.upper.is_lambda()) continue;
            TwoWayTransition n;
            if (!t.lower.falls()) {
                n = {from, lambda_read(), t.lower, upper_shadow(t.to)};
            } else if (m.is_final(t.to)) {
                n = {from, {"$", Direction::Right}, t.lower, t.to};
            } else {
                n = {from, lambda_read(), strip_fall(t.lower), dead};
            }
            report.shadow_rules.push_back({from, j, n});
            emit(std::move(n), nullptr);
        }
    }

    void close_lower(const std::string& p) {
        const std::string from = lower_shadow_of.at(p);
        for (std::size_t j = 0; j < m.transitions.size(); ++j) {
            const auto& t = m.transitions[j];
            if (t.from != p || !t.lower.is_lambda()) continue;
            TwoWayTransition n;
            if (!t.upper.falls()) {
                n = {from, t.upper, lambda_read(), lower_shadow(t.to)};
            } else if (m.is_final(t.to)) {
                n = {from, t.upper, {"$", Direction::Right}, t.to};
            } else {
                n = {from, strip_fall(t.upper), lambda_read(), dead};
            }
            report.shadow_rules.push_back({from, j, n});
            emit(std::move(n), nullptr);
        }
    }

    void close_shadows() {
        while (!upper_pending.empty() || !lower_pending.empty()) {
            if (!upper_pending.empty()) {
                std::string q = upper_pending.front();
                upper_pending.pop_front();
                close_upper(q);
            } else {
                std::string q = lower_pending.front();
                lower_pending.pop_front();
                close_lower(q);
            }
        }
    }
};

}  // namespace

static AllFinalResult build_all_final(const TwoWayMachine& m, AllFinalOptions options,
                                      ConstructionReport& report) {
    auto violations = validate(m);
    if (!violations.empty()) {
        for (const auto& v : violations)
            if (v.kind == ViolationKind::LambdaLambda)
                throw std::invalid_argument(
                    "machine has lambda/lambda transitions; run "
                    "eliminate_lambda_lambda first");
        throw std::invalid_argument("machine is not valid: " + violations.front().message);
    }

    Builder b(m, report);
    b.convert_rules();
    b.close_shadows();

    TwoWayMachine out;
    out.alphabet = m.alphabet;
    out.rho = m.rho;
    out.states = m.states;
    out.states.insert(out.states.end(), b.shadow_order.begin(), b.shadow_order.end());
    out.states.push_back(b.dead);
    out.initial = m.initial;
    out.transitions = b.out;
    out.finals = out.states;

    // Stripping can empty both reads of a rule; fold those lambda/lambda
    // rules away so the result is a well-formed machine again.
    bool has_lambda_lambda =
        std::any_of(out.transitions.begin(), out.transitions.end(), [](const auto& t) {
            return t.upper.is_lambda() && t.lower.is_lambda();
        });
    if (has_lambda_lambda) {
        out = eliminate_lambda_lambda(out);
        out.finals = out.states;
        report.lambda_folded = true;
    }

    std::set<std::string> shadow_names(b.shadow_order.begin(), b.shadow_order.end());
    if (options.prune_unreachable_shadows) {
        std::set<std::string> reach{out.initial};
        std::deque<std::string> todo{out.initial};
        while (!todo.empty()) {
            std::string q = todo.front();
            todo.pop_front();
            for (const auto& t : out.transitions)
                if (t.from == q && reach.insert(t.to).second) todo.push_back(t.to);
        }
        auto dropped = [&](const std::string& q) {
            return shadow_names.count(q) && !reach.count(q);
        };
        std::erase_if(out.states, dropped);
        std::erase_if(out.transitions,
                      [&](const auto& t) { return dropped(t.from) || dropped(t.to); });
        std::erase_if(shadow_names, [&](const std::string& q) { return !reach.count(q); });
        out.finals = out.states;
    }

    AllFinalResult result;
    result.dead = b.dead;
    result.machine = std::move(out);
    for (const auto& q : m.states) {
        StateCopies copies{q, {}, {}};
        auto us = b.upper_shadow_of.find(q);
        if (us != b.upper_shadow_of.end() && shadow_names.count(us->second))
            copies.upper_shadow = us->second;
        auto ls = b.lower_shadow_of.find(q);
        if (ls != b.lower_shadow_of.end() && shadow_names.count(ls->second))
            copies.lower_shadow = ls->second;
        result.state_map.emplace(q, std::move(copies));
    }
    return result;
}

AllFinalResult to_all_final(const TwoWayMachine& m, AllFinalOptions options) {
    ConstructionReport report;
    return build_all_final(m, options, report);
}

ConstructionReport explain_construction(const TwoWayMachine& m) {
    ConstructionReport report;
    build_all_final(m, AllFinalOptions{}, report);
    return report;
}

std::string ConstructionReport::to_text() const {
    std::string out;
    for (const auto& e : rules) {
        out += "rule " + std::to_string(e.rule) + ": " + wk::to_text(e.original) +
               "  -- class " + std::to_string(static_cast<int>(e.cls)) + ", " + e.action;
        for (const auto& t : e.emitted) out += "\n    -> " + wk::to_text(t);
        out += '\n';
    }
    for (const auto& s : shadow_rules) {
        out += "shadow " + s.shadow_state + " mirrors rule " +
               std::to_string(s.source_rule) + "\n    -> " + wk::to_text(s.emitted) + '\n';
    }
    if (lambda_folded)
        out += "stripped lambda/lambda rules folded into their source states\n";
    return out;
}

}  // namespace wk
