#include "wk/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace wk {

namespace {

constexpr std::string_view kHeader = "wk-automaton v1";
constexpr std::string_view kStateForbidden = "(),;~|";

bool valid_state_token(std::string_view tok) {
    for (char c : tok) {
        unsigned char u = static_cast<unsigned char>(c);
        if (!std::isprint(u) || std::isspace(u)) return false;
        if (kStateForbidden.find(c) != std::string_view::npos) return false;
    }
    return !tok.empty();
}

std::vector<std::string> split_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(std::string(s.substr(i, j - i)));
        i = j;
    }
    return out;
}

struct Line {
    std::size_t number;
    std::string text;  // comment stripped, trimmed right
};

std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        std::string line(raw);
        if (auto sc = line.find(';'); sc != std::string::npos) line.resize(sc);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (!blank) out.push_back({line_no, std::move(line)});
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return out;
}

struct Parser {
    ParseResult result;

    void fail(std::size_t line, std::size_t column, std::string message) {
        result.errors.push_back({line, column, std::move(message)});
    }

    // Parses "(word,dir)" or "(word)" starting at s[i]; returns false and
    // reports on malformed input. The word "_" denotes lambda.
    bool read_group(const Line& ln, const std::string& s, std::size_t& i, bool with_dir,
                    std::string* word, Direction* dir) {
        if (i >= s.size() || s[i] != '(') {
            fail(ln.number, i + 1, "expected '('");
            return false;
        }
        ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ',' && s[i] != ')') ++i;
        std::string w = s.substr(start, i - start);
        if (w.empty()) {
            fail(ln.number, start + 1, "empty read; use '_' for lambda");
            return false;
        }
        *word = (w == "_") ? "" : w;
        if (with_dir) {
            if (i >= s.size() || s[i] != ',') {
                fail(ln.number, i + 1, "expected ',' before the direction");
                return false;
            }
            ++i;
            if (i >= s.size()) {
                fail(ln.number, i + 1, "expected a direction (L, R or 0)");
                return false;
            }
            auto d = direction_from_char(s[i]);
            if (!d) {
                fail(ln.number, i + 1,
                     std::string("bad direction '") + s[i] + "'; expected L, R or 0");
                return false;
            }
            *dir = *d;
            ++i;
        }
        if (i >= s.size() || s[i] != ')') {
            fail(ln.number, i + 1, "expected ')'");
            return false;
        }
        ++i;
        return true;
    }
};

}  // namespace

ParseResult parse_raw(std::string_view text) {
    Parser p;
    auto lines = content_lines(text);
    if (lines.empty() || lines.front().text != kHeader) {
        p.fail(lines.empty() ? 1 : lines.front().number, 1,
               "expected header '" + std::string(kHeader) + "'");
        return std::move(p.result);
    }

    std::optional<bool> two_way;
    std::optional<Alphabet> alphabet;
    std::vector<std::pair<char, char>> pairs;
    bool saw_complement = false;
    std::vector<std::string> states;
    std::optional<std::string> initial;
    std::vector<std::string> finals;
    bool saw_final = false;
    struct RawTrans {
        std::size_t line;
        std::string from, to;
        std::string uw, lw;
        Direction ud = Direction::Stay, ld = Direction::Stay;
    };
    std::vector<RawTrans> trans;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& ln = lines[li];
        auto colon = ln.text.find(':');
        if (colon == std::string::npos) {
            p.fail(ln.number, 1, "expected 'key: ...'");
            return std::move(p.result);
        }
        std::string key = ln.text.substr(0, colon);
        std::string rest = ln.text.substr(colon + 1);

        if (key == "mode") {
            auto toks = split_tokens(rest);
            if (two_way.has_value()) {
                p.fail(ln.number, 1, "duplicate 'mode' section");
                return std::move(p.result);
            }
            if (toks.size() == 1 && toks[0] == "two-way") two_way = true;
            else if (toks.size() == 1 && toks[0] == "one-way") two_way = false;
            else {
                p.fail(ln.number, colon + 2, "mode must be 'one-way' or 'two-way'");
                return std::move(p.result);
            }
        } else if (key == "alphabet") {
            if (alphabet.has_value()) {
                p.fail(ln.number, 1, "duplicate 'alphabet' section");
                return std::move(p.result);
            }
            std::string symbols;
            for (const auto& tok : split_tokens(rest)) {
                if (tok.size() != 1) {
                    p.fail(ln.number, colon + 2,
                           "alphabet symbols are single characters; got '" + tok + "'");
                    return std::move(p.result);
                }
                symbols += tok;
            }
            try {
                alphabet = Alphabet(symbols);
            } catch (const std::exception& e) {
                p.fail(ln.number, colon + 2, e.what());
                return std::move(p.result);
            }
        } else if (key == "complement") {
            if (saw_complement) {
                p.fail(ln.number, 1, "duplicate 'complement' section");
                return std::move(p.result);
            }
            saw_complement = true;
            for (const auto& tok : split_tokens(rest)) {
                if (tok.size() != 3 || tok[1] != '~') {
                    p.fail(ln.number, colon + 2,
                           "complement pairs look like 'a~b'; got '" + tok + "'");
                    return std::move(p.result);
                }
                pairs.emplace_back(tok[0], tok[2]);
            }
        } else if (key == "states") {
            if (!states.empty()) {
                p.fail(ln.number, 1, "duplicate 'states' section");
                return std::move(p.result);
            }
            for (const auto& tok : split_tokens(rest)) {
                if (!valid_state_token(tok)) {
                    p.fail(ln.number, colon + 2, "bad state name '" + tok + "'");
                    return std::move(p.result);
                }
                states.push_back(tok);
            }
            if (states.empty()) {
                p.fail(ln.number, colon + 2, "at least one state is required");
                return std::move(p.result);
            }
        } else if (key == "initial") {
            auto toks = split_tokens(rest);
            if (initial.has_value()) {
                p.fail(ln.number, 1, "duplicate 'initial' section");
                return std::move(p.result);
            }
            if (toks.size() != 1) {
                p.fail(ln.number, colon + 2, "exactly one initial state is required");
                return std::move(p.result);
            }
            initial = toks[0];
        } else if (key == "final") {
            if (saw_final) {
                p.fail(ln.number, 1, "duplicate 'final' section");
                return std::move(p.result);
            }
            saw_final = true;
            finals = split_tokens(rest);
        } else if (key == "trans") {
            if (!two_way.has_value()) {
                p.fail(ln.number, 1, "'mode' must come before the first 'trans' line");
                return std::move(p.result);
            }
            const std::string& s = ln.text;  // columns relative to the line
            std::size_t i = colon + 1;
            auto skip_ws = [&] {
                while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            };
            auto read_token = [&]() {
                skip_ws();
                std::size_t start = i;
                while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
                       s[i] != '(')
                    ++i;
                return s.substr(start, i - start);
            };
            RawTrans t;
            t.line = ln.number;
            t.from = read_token();
            if (t.from.empty()) {
                p.fail(ln.number, i + 1, "expected a source state");
                return std::move(p.result);
            }
            skip_ws();
            if (!p.read_group(ln, s, i, *two_way, &t.uw, &t.ud)) return std::move(p.result);
            skip_ws();
            if (!p.read_group(ln, s, i, *two_way, &t.lw, &t.ld)) return std::move(p.result);
            t.to = read_token();
            if (t.to.empty()) {
                p.fail(ln.number, i + 1, "expected a target state");
                return std::move(p.result);
            }
            skip_ws();
            if (i != s.size()) {
                p.fail(ln.number, i + 1, "unexpected trailing text");
                return std::move(p.result);
            }
            if (!valid_state_token(t.from) || !valid_state_token(t.to)) {
                p.fail(ln.number, 1, "bad state name in transition");
                return std::move(p.result);
            }
            trans.push_back(std::move(t));
        } else {
            p.fail(ln.number, 1, "unknown section '" + key + "'");
            return std::move(p.result);
        }
    }

    if (!two_way.has_value()) p.fail(0, 0, "missing 'mode' section");
    if (!alphabet.has_value()) p.fail(0, 0, "missing 'alphabet' section");
    if (states.empty()) p.fail(0, 0, "missing 'states' section");
    if (!initial.has_value()) p.fail(0, 0, "missing 'initial' section");
    if (!p.result.errors.empty()) return std::move(p.result);

    ComplementarityRelation rho;
    try {
        rho = ComplementarityRelation(*alphabet, pairs);
    } catch (const std::exception& e) {
        p.fail(0, 0, std::string("complement: ") + e.what());
        return std::move(p.result);
    }

    // dedupe finals, keep declaration order
    std::vector<std::string> unique_finals;
    for (const auto& q : finals)
        if (std::find(unique_finals.begin(), unique_finals.end(), q) == unique_finals.end())
            unique_finals.push_back(q);

    ParsedMachine parsed;
    if (*two_way) {
        TwoWayMachine m;
        m.alphabet = *alphabet;
        m.rho = rho;
        m.states = states;
        m.initial = *initial;
        m.finals = unique_finals;
        for (const auto& t : trans) {
            m.transitions.push_back({t.from, {t.uw, t.ud}, {t.lw, t.ld}, t.to});
            parsed.transition_lines.push_back(t.line);
        }
        parsed.machine = std::move(m);
    } else {
        OneWayMachine m;
        m.alphabet = *alphabet;
        m.rho = rho;
        m.states = states;
        m.initial = *initial;
        m.finals = unique_finals;
        for (const auto& t : trans) {
            m.transitions.push_back({t.from, t.uw, t.lw, t.to});
            parsed.transition_lines.push_back(t.line);
        }
        parsed.machine = std::move(m);
    }
    p.result.machine = std::move(parsed);
    return std::move(p.result);
}

ParseResult parse(std::string_view text) {
    ParseResult result = parse_raw(text);
    if (!result.machine) return result;
    const auto& parsed = *result.machine;
    std::vector<Violation> violations =
        parsed.two_way() ? validate(parsed.as_two_way()) : validate(parsed.as_one_way());
    for (const auto& v : violations) {
        std::size_t line = 0;
        if (v.transition && *v.transition < parsed.transition_lines.size())
            line = parsed.transition_lines[*v.transition];
        result.errors.push_back({line, 1, v.message});
    }
    return result;
}

namespace {

std::string word_or_lambda(const std::string& w) { return w.empty() ? "_" : w; }

template <typename Machine>
std::string serialize_prefix(const Machine& m, std::string_view mode) {
    std::ostringstream out;
    out << kHeader << '\n';
    out << "mode: " << mode << '\n';
    out << "alphabet:";
    for (char c : m.alphabet.symbols()) out << ' ' << c;
    out << '\n';
    out << "complement:";
    for (auto [a, b] : m.rho.canonical_pairs()) out << ' ' << a << '~' << b;
    out << '\n';
    out << "states:";
    for (const auto& q : m.states) out << ' ' << q;
    out << '\n';
    out << "initial: " << m.initial << '\n';
    out << "final:";
    for (const auto& q : m.states)
        if (m.is_final(q)) out << ' ' << q;
    out << '\n';
    return std::move(out).str();
}

template <typename Machine, typename Key>
std::vector<std::size_t> sorted_rule_order(const Machine& m, Key key) {
    std::vector<std::size_t> order(m.transitions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return key(m.transitions[a]) < key(m.transitions[b]);
                     });
    return order;
}

template <typename Machine>
std::map<std::string, std::size_t> state_rank(const Machine& m) {
    std::map<std::string, std::size_t> rank;
    for (std::size_t i = 0; i < m.states.size(); ++i) rank.emplace(m.states[i], i);
    return rank;
}

}  // namespace

std::string serialize(const TwoWayMachine& m) {
    std::string out = serialize_prefix(m, "two-way");
    auto rank = state_rank(m);
    auto at = [&](const std::string& q) {
        auto it = rank.find(q);
        return it == rank.end() ? rank.size() : it->second;
    };
    auto key = [&](const TwoWayTransition& t) {
        return std::make_tuple(at(t.from), t.upper.word, t.lower.word, at(t.to),
                               direction_char(t.upper.dir), direction_char(t.lower.dir));
    };
    for (std::size_t i : sorted_rule_order(m, key)) {
        const auto& t = m.transitions[i];
        out += "trans: " + t.from + " (" + word_or_lambda(t.upper.word) + ',' +
               direction_char(t.upper.dir) + ")(" + word_or_lambda(t.lower.word) + ',' +
               direction_char(t.lower.dir) + ") " + t.to + '\n';
    }
    return out;
}

std::string serialize(const OneWayMachine& m) {
    std::string out = serialize_prefix(m, "one-way");
    auto rank = state_rank(m);
    auto at = [&](const std::string& q) {
        auto it = rank.find(q);
        return it == rank.end() ? rank.size() : it->second;
    };
    auto key = [&](const OneWayTransition& t) {
        return std::make_tuple(at(t.from), t.upper, t.lower, at(t.to));
    };
    for (std::size_t i : sorted_rule_order(m, key)) {
        const auto& t = m.transitions[i];
        out += "trans: " + t.from + " (" + word_or_lambda(t.upper) + ")(" +
               word_or_lambda(t.lower) + ") " + t.to + '\n';
    }
    return out;
}

}  // namespace wk
