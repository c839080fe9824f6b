// transform.hpp - the all-final construction for two-way machines
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wk/model.hpp"

namespace wk {

struct StateCopies {
    std::string plain;
    std::optional<std::string> upper_shadow;  // "upper head already past '$'"
    std::optional<std::string> lower_shadow;
};

struct AllFinalOptions {
    bool prune_unreachable_shadows = true;
};

struct AllFinalResult {
    TwoWayMachine machine;  // finals == states
    std::map<std::string, StateCopies> state_map;
    std::string dead;  // the single merged sink; never has outgoing rules
};

/// Per-rule ledger of what the construction did, for diagnostics.
struct RuleLedgerEntry {
    std::size_t rule = 0;
    TwoWayTransition original;
    TransitionClass cls = TransitionClass::Class1;
    std::string action;
    std::vector<TwoWayTransition> emitted;
};

struct ShadowLedgerEntry {
    std::string shadow_state;
    std::size_t source_rule = 0;  // the original rule being mirrored
    TwoWayTransition emitted;
};

struct ConstructionReport {
    std::vector<RuleLedgerEntry> rules;
    std::vector<ShadowLedgerEntry> shadow_rules;
    bool lambda_folded = false;  // emitted lambda/lambda rules were folded away

    std::string to_text() const;
};

/// Compiles a validated two-way machine into an all-final machine accepting
/// the same language. Rules whose reads would carry a head past the right
/// end marker into a non-final state are rewritten to withhold the marker:
/// both-falling rules are redirected into the dead sink, single-falling
/// rules into a shadow copy of the target that remembers which head is
/// (virtually) already off the tape. Shadow states mirror the original
/// machine's lambda rules for the off-tape strand and read the withheld '$'
/// exactly when the simulated machine would accept.
///
/// Throws std::invalid_argument on invalid machines; lambda/lambda rules in
/// particular must be removed with eliminate_lambda_lambda first.
AllFinalResult to_all_final(const TwoWayMachine& m, AllFinalOptions options = {});

/// Runs the construction and returns only its ledger.
ConstructionReport explain_construction(const TwoWayMachine& m);

}  // namespace wk
