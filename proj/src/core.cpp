#include "wk/core.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace wk {

bool is_reserved_symbol(char c) {
    static constexpr std::string_view reserved = "#$_(),|;~";
    unsigned char u = static_cast<unsigned char>(c);
    if (!std::isprint(u) || std::isspace(u)) return true;
    return reserved.find(c) != std::string_view::npos;
}

Alphabet::Alphabet(std::string_view symbols) {
    if (symbols.empty())
        throw std::invalid_argument("alphabet must not be empty");
    for (char c : symbols) {
        if (is_reserved_symbol(c))
            throw std::invalid_argument(std::string("reserved character '") + c +
                                        "' cannot be an alphabet symbol");
        if (symbols_.find(c) != std::string::npos)
            throw std::invalid_argument(std::string("duplicate alphabet symbol '") + c + "'");
        symbols_.push_back(c);
    }
}

bool Alphabet::contains(char s) const {
    return symbols_.find(s) != std::string::npos;
}

std::size_t Alphabet::index_of(char s) const {
    auto pos = symbols_.find(s);
    if (pos == std::string::npos)
        throw std::invalid_argument(std::string("symbol '") + s + "' is not in the alphabet");
    return pos;
}

bool Alphabet::contains_word(std::string_view w) const {
    return std::all_of(w.begin(), w.end(), [&](char c) { return contains(c); });
}

ComplementarityRelation::ComplementarityRelation(
    Alphabet alphabet, const std::vector<std::pair<char, char>>& pairs)
    : alphabet_(std::move(alphabet)), matrix_(alphabet_.size() * alphabet_.size(), 0) {
    const std::size_t n = alphabet_.size();
    for (auto [a, b] : pairs) {
        std::size_t i = alphabet_.index_of(a);
        std::size_t j = alphabet_.index_of(b);
        matrix_[i * n + j] = 1;
        matrix_[j * n + i] = 1;  // symmetric closure
    }
}

ComplementarityRelation ComplementarityRelation::identity(Alphabet alphabet) {
    std::vector<std::pair<char, char>> pairs;
    for (char c : alphabet.symbols()) pairs.emplace_back(c, c);
    return ComplementarityRelation(std::move(alphabet), pairs);
}

bool ComplementarityRelation::related(char a, char b) const {
    const std::size_t n = alphabet_.size();
    return matrix_[alphabet_.index_of(a) * n + alphabet_.index_of(b)] != 0;
}

std::string ComplementarityRelation::complements_of(char s) const {
    const std::size_t n = alphabet_.size();
    const std::size_t i = alphabet_.index_of(s);
    std::string out;
    for (std::size_t j = 0; j < n; ++j)
        if (matrix_[i * n + j]) out.push_back(alphabet_.symbols()[j]);
    return out;
}

std::vector<std::pair<char, char>> ComplementarityRelation::canonical_pairs() const {
    const std::size_t n = alphabet_.size();
    std::vector<std::pair<char, char>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (matrix_[i * n + j])
                out.emplace_back(alphabet_.symbols()[i], alphabet_.symbols()[j]);
    return out;
}

Tape Tape::for_word(std::string_view word) {
    Tape t;
    t.cells.reserve(word.size() + 2);
    t.cells.push_back(kLeftMarker);
    t.cells.append(word);
    t.cells.push_back(kRightMarker);
    return t;
}

DoubleStrand DoubleStrand::from_words(std::string_view upper_word,
                                      std::string_view lower_word) {
    return DoubleStrand{Tape::for_word(upper_word), Tape::for_word(lower_word)};
}

namespace {

bool well_formed_tape(const Tape& t, const ComplementarityRelation& rel,
                      std::size_t* bad_cell) {
    if (t.size() < 2 || t.cells.front() != kLeftMarker || t.cells.back() != kRightMarker) {
        *bad_cell = 0;
        return false;
    }
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        if (!rel.alphabet().contains(t.cells[i])) {
            *bad_cell = i;
            return false;
        }
    }
    return true;
}

}  // namespace

StrandCheck validate_double_strand(const DoubleStrand& ds,
                                   const ComplementarityRelation& rel) {
    if (ds.upper.size() != ds.lower.size())
        return {StrandCheck::Status::LengthMismatch, 0};
    std::size_t bad = 0;
    if (!well_formed_tape(ds.upper, rel, &bad) || !well_formed_tape(ds.lower, rel, &bad))
        return {StrandCheck::Status::BadTape, bad};
    for (std::size_t i = 1; i + 1 < ds.upper.size(); ++i)
        if (!rel.related(ds.upper.cells[i], ds.lower.cells[i]))
            return {StrandCheck::Status::RelationViolation, i};
    return {};
}

bool prefix_comparable(std::string_view u, std::string_view v) {
    if (u.size() > v.size()) std::swap(u, v);
    return v.substr(0, u.size()) == u;
}

LowerStrandStream::LowerStrandStream(const ComplementarityRelation& rel,
                                     std::string_view upper) {
    choices_.reserve(upper.size());
    for (char c : upper) {
        choices_.push_back(rel.complements_of(c));
        total_ *= choices_.back().size();
    }
    odometer_.assign(upper.size(), 0);
    done_ = (total_ == 0);
}

std::optional<std::string> LowerStrandStream::next() {
    if (done_) return std::nullopt;
    std::string out;
    out.reserve(choices_.size());
    for (std::size_t i = 0; i < choices_.size(); ++i)
        out.push_back(choices_[i][odometer_[i]]);
    // advance, rightmost position least significant
    done_ = true;
    for (std::size_t i = choices_.size(); i-- > 0;) {
        if (++odometer_[i] < choices_[i].size()) {
            done_ = false;
            break;
        }
        odometer_[i] = 0;
    }
    return out;
}

std::vector<std::string> enumerate_lower_strands(const ComplementarityRelation& rel,
                                                 std::string_view upper) {
    LowerStrandStream stream(rel, upper);
    std::vector<std::string> out;
    while (auto w = stream.next()) out.push_back(std::move(*w));
    return out;
}

}  // namespace wk
