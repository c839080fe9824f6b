// core.hpp - alphabets, complementarity relations and double-stranded tapes
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wk {

inline constexpr char kLeftMarker = '#';
inline constexpr char kRightMarker = '$';

/// True for characters that may never appear as alphabet symbols: the two
/// tape markers plus everything the .wk file format claims for itself
/// (`_ ( ) , | ; ~`), whitespace and non-printable characters.
bool is_reserved_symbol(char c);

/// Ordered set of single-character symbols. Declaration order matters: it is
/// the order used by lower-strand enumeration and by word sweeps.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::string_view symbols);

    bool contains(char s) const;
    std::size_t index_of(char s) const;  // throws std::invalid_argument on unknown symbol
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    const std::string& symbols() const { return symbols_; }
    bool contains_word(std::string_view w) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::string symbols_;
};

/// Symmetric relation over an alphabet, closed under symmetry at
/// construction no matter how the pairs were listed.
class ComplementarityRelation {
public:
    ComplementarityRelation() = default;
    ComplementarityRelation(Alphabet alphabet,
                            const std::vector<std::pair<char, char>>& pairs);

    static ComplementarityRelation identity(Alphabet alphabet);

    const Alphabet& alphabet() const { return alphabet_; }
    bool related(char a, char b) const;        // throws on unknown symbols
    std::string complements_of(char s) const;  // in alphabet order, possibly empty

    /// One entry per unordered pair: (s,t) with index(s) <= index(t), sorted.
    std::vector<std::pair<char, char>> canonical_pairs() const;

    friend bool operator==(const ComplementarityRelation&,
                           const ComplementarityRelation&) = default;

private:
    Alphabet alphabet_;
    std::vector<char> matrix_;  // size() x size() adjacency
};

/// End-marked tape: '#', then the word, then '$'.
struct Tape {
    std::string cells;

    static Tape for_word(std::string_view word);
    std::size_t size() const { return cells.size(); }
    char at(std::size_t i) const { return cells.at(i); }

    friend bool operator==(const Tape&, const Tape&) = default;
};

struct DoubleStrand {
    Tape upper;
    Tape lower;

    static DoubleStrand from_words(std::string_view upper_word,
                                   std::string_view lower_word);
    std::size_t length() const { return upper.size(); }
};

struct StrandCheck {
    enum class Status { Ok, LengthMismatch, BadTape, RelationViolation };
    Status status = Status::Ok;
    std::size_t column = 0;  // offending cell for RelationViolation / BadTape

    bool ok() const { return status == Status::Ok; }
};

/// Checks the double-strand invariants: equal length, well-formed end-marked
/// tapes, every interior column in the relation. Length mismatch is reported
/// distinctly from a relation violation.
StrandCheck validate_double_strand(const DoubleStrand& ds,
                                   const ComplementarityRelation& rel);

/// u is a prefix of v or v is a prefix of u.
bool prefix_comparable(std::string_view u, std::string_view v);

/// Streams every lower strand complementary to `upper`, lexicographically by
/// alphabet order. Empty stream when some position has no complement.
class LowerStrandStream {
public:
    LowerStrandStream(const ComplementarityRelation& rel, std::string_view upper);

    std::optional<std::string> next();

    /// Number of strands the stream will yield in total.
    std::uint64_t total_count() const { return total_; }

private:
    std::vector<std::string> choices_;  // per-position complements, alphabet order
    std::vector<std::size_t> odometer_;
    std::uint64_t total_ = 1;
    bool done_ = false;
};

/// Collects the whole stream; intended for small inputs and tests.
std::vector<std::string> enumerate_lower_strands(const ComplementarityRelation& rel,
                                                 std::string_view upper);

}  // namespace wk
