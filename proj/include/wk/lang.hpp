// lang.hpp - bounded-language sweeps, oracles, gallery machines, random corpora
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wk/model.hpp"
#include "wk/sim.hpp"

namespace wk {

inline constexpr std::size_t kTwoWayLenCap = 10;
inline constexpr std::size_t kOneWayLenCap = 12;

/// Independent oracle for the {ww} language: even length, halves equal.
bool ww_oracle(std::string_view word);

/// Deterministic two-way machine accepting {ww | w in {a,b}*}. The lower
/// head races two cells per upper cell to find the middle, rewinds, then the
/// two heads compare the halves cell by cell.
TwoWayMachine gallery_ww();

/// One-way machine accepting {a^n b^n : n >= 0} in the upper strand.
OneWayMachine gallery_anbn();

struct RandomMachineLimits {
    std::size_t max_states = 4;
    std::size_t max_transitions = 8;
    std::size_t alphabet_size = 2;  // at most 2
    enum class Rho { Identity, NonInjective, Any } rho = Rho::Any;
};

/// Seed-deterministic generator of validated two-way machines. Read shapes
/// are drawn so that every transition class occurs with positive probability
/// across a corpus of seeds.
TwoWayMachine random_machine(std::uint64_t seed, RandomMachineLimits limits = {});

/// All words of length <= max_len in length-then-lexicographic order, the
/// lexicographic part following alphabet declaration order.
std::vector<std::string> enumerate_words(const Alphabet& alphabet, std::size_t max_len);

enum class Execution { Serial, Parallel };

struct SweepOptions {
    Execution execution = Execution::Parallel;
    std::optional<std::size_t> length_cap;  // overrides the per-mode default cap
};

/// Membership verdict per word. The serial variant is the reference
/// implementation the parallel one is checked against.
std::vector<char> sweep_membership_serial(const TwoWayMachine& m,
                                          const std::vector<std::string>& words);
std::vector<char> sweep_membership_parallel(const TwoWayMachine& m,
                                            const std::vector<std::string>& words);
std::vector<char> sweep_membership_serial(const OneWayMachine& m,
                                          const std::vector<std::string>& words);
std::vector<char> sweep_membership_parallel(const OneWayMachine& m,
                                            const std::vector<std::string>& words);

struct LanguageSample {
    std::string machine;  // caller-supplied identifier, may stay empty
    std::size_t max_len = 0;
    std::vector<std::string> accepted;  // length-lex order
};

LanguageSample language_sample(const TwoWayMachine& m, std::size_t max_len,
                               SweepOptions options = {});
LanguageSample language_sample(const OneWayMachine& m, std::size_t max_len,
                               SweepOptions options = {});

struct EquivalenceReport {
    bool equivalent = true;
    std::optional<std::string> counterexample;  // first disagreement, length-lex
    int only_accepted_by = 0;                   // 1 or 2 when not equivalent
    std::size_t max_len = 0;
    std::size_t checked = 0;
};

EquivalenceReport equivalent_up_to(const TwoWayMachine& m1, const TwoWayMachine& m2,
                                   std::size_t max_len, SweepOptions options = {});
EquivalenceReport equivalent_up_to(const OneWayMachine& m1, const OneWayMachine& m2,
                                   std::size_t max_len, SweepOptions options = {});

}  // namespace wk
