// model.hpp - machine descriptions, structural validation and classification
#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wk/core.hpp"

namespace wk {

enum class Direction { Left, Right, Stay };

char direction_char(Direction d);                      // 'L', 'R', '0'
std::optional<Direction> direction_from_char(char c);

/// One strand's read: a word over alphabet-plus-markers and a direction.
/// Read semantics: a head at cell p matches an R-read c1..ck against cells
/// p..p+k-1 and moves to p+k; an L-read matches c1..ck against cells
/// p, p-1, ..., p-k+1 (symbols in head-encounter order) and moves to p-k.
/// A stationary read is exactly the empty word.
struct StrandRead {
    std::string word;
    Direction dir = Direction::Stay;

    bool is_lambda() const { return word.empty(); }
    /// The head leaves the tape on the right: word ends in '$' and reads right.
    bool falls() const {
        return dir == Direction::Right && !word.empty() && word.back() == kRightMarker;
    }
    /// Leftward read starting on the right end marker.
    bool left_dollar() const {
        return dir == Direction::Left && !word.empty() && word.front() == kRightMarker;
    }

    friend bool operator==(const StrandRead&, const StrandRead&) = default;
    friend auto operator<=>(const StrandRead&, const StrandRead&) = default;
};

StrandRead lambda_read();
StrandRead read_of(std::string word, Direction dir);

struct TwoWayTransition {
    std::string from;
    StrandRead upper;
    StrandRead lower;
    std::string to;

    friend bool operator==(const TwoWayTransition&, const TwoWayTransition&) = default;
    friend auto operator<=>(const TwoWayTransition&, const TwoWayTransition&) = default;
};

struct OneWayTransition {
    std::string from;
    std::string upper;
    std::string lower;
    std::string to;

    friend bool operator==(const OneWayTransition&, const OneWayTransition&) = default;
    friend auto operator<=>(const OneWayTransition&, const OneWayTransition&) = default;
};

std::string to_text(const TwoWayTransition& t);  // "q0 (#,R)(#,R) qA"
std::string to_text(const OneWayTransition& t);  // "q0 (a)(_) q0"

struct TwoWayMachine {
    Alphabet alphabet;
    ComplementarityRelation rho;
    std::vector<std::string> states;  // declaration order
    std::string initial;
    std::vector<std::string> finals;
    std::vector<TwoWayTransition> transitions;

    bool is_final(std::string_view q) const;
    std::optional<std::size_t> state_index(std::string_view q) const;
};

struct OneWayMachine {
    Alphabet alphabet;
    ComplementarityRelation rho;
    std::vector<std::string> states;
    std::string initial;
    std::vector<std::string> finals;
    std::vector<OneWayTransition> transitions;

    bool is_final(std::string_view q) const;
    std::optional<std::size_t> state_index(std::string_view q) const;
};

/// Ignores transition and final-state ordering; everything else must match.
bool structurally_equal(const TwoWayMachine& a, const TwoWayMachine& b);
bool structurally_equal(const OneWayMachine& a, const OneWayMachine& b);

enum class ViolationKind {
    EmptyAlphabet,
    AlphabetMismatch,     // rho built over a different alphabet
    DuplicateState,
    DanglingState,        // initial/final/endpoint not in the state list
    UnknownSymbol,        // read word uses a character outside alphabet+markers
    LambdaWithDirection,  // empty word with dir L or R
    NonLambdaStationary,  // non-empty word with dir 0
    LeftReadEndsWithHash, // the left-edge restriction
    MisplacedMarker,      // '#'/'$' somewhere it can never match
    LambdaLambda,         // both strands read the empty word
    MarkerInOneWay,
};

struct Violation {
    ViolationKind kind;
    std::string message;
    std::optional<std::size_t> transition;  // index into machine.transitions

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Structural validation; an empty list means the machine is well-formed.
std::vector<Violation> validate(const TwoWayMachine& m);
std::vector<Violation> validate(const OneWayMachine& m);

struct SubclassFlags {
    bool stateless = false;
    bool all_final = false;
    bool simple = false;
    bool one_limited = false;

    friend bool operator==(const SubclassFlags&, const SubclassFlags&) = default;
};

SubclassFlags classify_subclass(const TwoWayMachine& m);

struct DeterminismReport {
    bool deterministic = true;
    // indices of a conflicting transition pair, present iff not deterministic
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Determinism for one-way machines: two distinct same-source rules must not
/// be prefix comparable on both strands.
DeterminismReport is_deterministic(const OneWayMachine& m);

/// Syntactic sufficient condition for two-way machines. Two same-source
/// strand reads conflict when either word is empty, when they share a
/// direction and are prefix comparable, or when they read in opposite
/// directions but start on the same symbol (both inspect the cell under the
/// head first). A rule pair conflicts only if both strands conflict.
DeterminismReport is_deterministic_two_way(const TwoWayMachine& m);

enum class TransitionClass { Class1 = 1, Class2, Class3, Class4, Class5 };

/// The all-final construction's taxonomy. Any rule with a leftward read
/// starting on '$' is Class5; otherwise both strands falling off is Class2,
/// only the upper Class3, only the lower Class4, neither Class1.
TransitionClass classify_transition(const TwoWayTransition& t);

/// Removes every lambda/lambda rule while preserving the accepted language:
/// folds the lambda-closure into the targets of real rules, into the final
/// set, and into a fresh initial state when the original initial has a
/// non-trivial closure. A machine without lambda/lambda rules is returned
/// unchanged.
TwoWayMachine eliminate_lambda_lambda(const TwoWayMachine& m);

}  // namespace wk
