// sim.hpp - execution engines for one-way and two-way machines
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wk/core.hpp"
#include "wk/model.hpp"

namespace wk {

/// A point in the run of a two-way machine over a fixed double tape.
/// Positions range over 0..len where len designates "fallen off the right
/// hand side"; a fallen-off head matches only lambda reads from then on.
struct Configuration {
    std::string state;
    std::size_t upper_pos = 0;
    std::size_t lower_pos = 0;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class Outcome { Accept, Reject };

enum class RejectReason { NoAcceptingRun, Loop, Halt, FellOffNonFinal };

std::string_view outcome_name(Outcome o);
std::string_view reject_reason_name(RejectReason r);

struct Verdict {
    Outcome outcome = Outcome::Reject;
    std::optional<RejectReason> reason;        // present iff rejected
    std::optional<std::string> witness_lower;  // present iff accepted
    std::vector<std::size_t> witness_rules;    // fired rule indices, accepted runs

    bool accepted() const { return outcome == Outcome::Accept; }
};

struct TraceStep {
    std::size_t rule = 0;  // index into machine.transitions
    Configuration after;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct StrandStats {
    std::string lower;
    std::size_t explored = 0;  // configurations visited for this strand
};

struct RunReport {
    Verdict verdict;
    std::size_t explored_total = 0;
    std::vector<StrandStats> strands;  // strands actually searched, in order
    std::vector<TraceStep> trace;      // accept witness or deterministic run
};

/// |Q| * (len+1)^2 with len = |word|+2: the configuration-count ceiling the
/// two-way search promises never to exceed per lower strand.
std::size_t configuration_bound(const TwoWayMachine& m, std::string_view word);

/// Transitions from c.state whose reads match at the head positions.
std::vector<std::size_t> applicable(const TwoWayMachine& m, const DoubleStrand& ds,
                                    const Configuration& c);

/// Fires one transition; throws std::invalid_argument if it does not apply.
Configuration step(const TwoWayMachine& m, const DoubleStrand& ds,
                   const Configuration& c, std::size_t rule);

/// Membership by breadth-first reachability over the configuration graph,
/// one complementary lower strand at a time (lexicographic order, early exit
/// on the first accepting strand). Throws on word symbols outside the
/// alphabet.
RunReport run_two_way(const TwoWayMachine& m, std::string_view word);
Verdict accepts_two_way(const TwoWayMachine& m, std::string_view word);

/// Single-run simulation for machines that pass is_deterministic_two_way and
/// whose relation admits at most one lower strand for this word. Terminates
/// with Accept, Halt, FellOffNonFinal or Loop and always carries a trace.
/// Throws if a configuration offers more than one applicable rule.
RunReport trace_deterministic(const TwoWayMachine& m, std::string_view word);

/// Membership for one-way machines: BFS over (state, upper consumed, lower
/// consumed), choosing complementary lower symbols on the fly.
RunReport run_one_way(const OneWayMachine& m, std::string_view word);
Verdict accepts_one_way(const OneWayMachine& m, std::string_view word);

/// Re-runs a report's trace step by step and checks it reproduces the
/// verdict. Used by tests; also the contract behind every witness we emit.
bool replay_trace(const TwoWayMachine& m, std::string_view word, const RunReport& report);

}  // namespace wk
