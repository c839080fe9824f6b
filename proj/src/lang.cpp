#include "wk/lang.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <stdexcept>

namespace wk {

bool ww_oracle(std::string_view word) {
    if (word.size() % 2 != 0) return false;
    const std::size_t half = word.size() / 2;
    return word.substr(0, half) == word.substr(half);
}

TwoWayMachine gallery_ww() {
    TwoWayMachine m;
    m.alphabet = Alphabet("ab");
    m.rho = ComplementarityRelation::identity(m.alphabet);
    m.states = {"q0", "qA", "qB", "qC", "qD", "qF"};
    m.initial = "q0";
    m.finals = {"qF"};
    auto add = [&](std::string from, std::string uw, Direction ud, std::string lw,
                   Direction ld, std::string to) {
        m.transitions.push_back({std::move(from),
                                 {std::move(uw), ud},
                                 {std::move(lw), ld},
                                 std::move(to)});
    };
    const std::string sigma = m.alphabet.symbols();
    add("q0", "#", Direction::Right, "#", Direction::Right, "qA");
    for (char x : sigma)
        for (char y : sigma)
            for (char z : sigma)
                add("qA", std::string(1, x), Direction::Right, std::string{y, z},
                    Direction::Right, "qA");
    add("qA", "", Direction::Stay, "$", Direction::Left, "qB");
    for (char x : sigma)
        add("qB", "", Direction::Stay, std::string(1, x), Direction::Left, "qB");
    add("qB", "", Direction::Stay, "#", Direction::Right, "qC");
    for (char x : sigma)
        add("qC", std::string(1, x), Direction::Right, std::string(1, x),
            Direction::Right, "qC");
    add("qC", "$", Direction::Right, "", Direction::Stay, "qD");
    for (char x : sigma)
        add("qD", "", Direction::Stay, std::string(1, x), Direction::Right, "qD");
    add("qD", "", Direction::Stay, "$", Direction::Right, "qF");
    return m;
}

OneWayMachine gallery_anbn() {
    OneWayMachine m;
    m.alphabet = Alphabet("ab");
    m.rho = ComplementarityRelation::identity(m.alphabet);
    m.states = {"q0", "q1", "q2"};
    m.initial = "q0";
    m.finals = {"q0", "q2"};
    m.transitions = {
        {"q0", "a", "", "q0"}, {"q0", "b", "a", "q1"}, {"q1", "b", "a", "q1"},
        {"q1", "", "b", "q2"}, {"q2", "", "b", "q2"},
    };
    return m;
}

namespace {

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(engine() % n); }
};

std::string random_word(Rng& rng, const std::string& sigma, std::size_t min_len,
                        std::size_t max_len) {
    std::size_t len = min_len + rng.pick(max_len - min_len + 1);
    std::string w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(sigma[rng.pick(sigma.size())]);
    return w;
}

StrandRead random_read(Rng& rng, const std::string& sigma) {
    switch (rng.pick(6)) {
        case 0: return lambda_read();
        case 1: return {random_word(rng, sigma, 1, 2), Direction::Right};
        case 2: return {random_word(rng, sigma, 1, 2), Direction::Left};
        case 3: return {"#" + random_word(rng, sigma, 0, 1), Direction::Right};
        case 4: return {random_word(rng, sigma, 0, 1) + "$", Direction::Right};
        default: return {"$" + random_word(rng, sigma, 0, 1), Direction::Left};
    }
}

}  // namespace

TwoWayMachine random_machine(std::uint64_t seed, RandomMachineLimits limits) {
    if (limits.max_states == 0 || limits.max_states > 4 || limits.max_transitions > 8 ||
        limits.alphabet_size == 0 || limits.alphabet_size > 2)
        throw std::invalid_argument("random_machine limits out of range");
    Rng rng(seed);

    TwoWayMachine m;
    const std::size_t sigma_size = 1 + rng.pick(limits.alphabet_size);
    m.alphabet = Alphabet(std::string_view("ab").substr(0, sigma_size));
    bool non_injective = limits.rho == RandomMachineLimits::Rho::NonInjective ||
                         (limits.rho == RandomMachineLimits::Rho::Any && rng.pick(2) == 1);
    if (non_injective && sigma_size == 2)
        m.rho = ComplementarityRelation(m.alphabet, {{'a', 'a'}, {'a', 'b'}});
    else
        m.rho = ComplementarityRelation::identity(m.alphabet);

    const std::size_t nstates = 1 + rng.pick(limits.max_states);
    for (std::size_t i = 0; i < nstates; ++i) m.states.push_back("q" + std::to_string(i));
    m.initial = m.states.front();
    for (const auto& q : m.states)
        if (rng.pick(2) == 1) m.finals.push_back(q);

    const std::string sigma = m.alphabet.symbols();

    // Most machines get a planted accepting run so the corpus exercises the
    // accepting side of every sweep: pick a word, a complementary lower
    // strand, and chop both end-marked tapes into rightward read chunks that
    // walk random states and carry both heads off the tape. Marker placement
    // stays valid because '#' is always the first cell of the first chunk
    // and '$' the last cell of the last one.
    if (limits.max_transitions >= 2 && rng.pick(4) != 0) {
        const std::size_t max_word = std::min<std::size_t>(3, limits.max_transitions - 2);
        const std::size_t wlen = rng.pick(max_word + 1);
        const std::string word = random_word(rng, sigma, wlen, wlen);
        std::string lower;
        for (char c : word) {
            const std::string choices = m.rho.complements_of(c);
            lower.push_back(choices[rng.pick(choices.size())]);
        }
        const std::string utape = "#" + word + "$";
        const std::string ltape = "#" + lower + "$";
        std::size_t up = 0, lp = 0;
        std::string current = m.initial;
        while (up < utape.size() || lp < ltape.size()) {
            const std::size_t uk =
                up < utape.size() ? 1 + rng.pick(std::min<std::size_t>(2, utape.size() - up))
                                  : 0;
            const std::size_t lk =
                lp < ltape.size() ? 1 + rng.pick(std::min<std::size_t>(2, ltape.size() - lp))
                                  : 0;
            StrandRead ur = uk ? StrandRead{utape.substr(up, uk), Direction::Right}
                               : lambda_read();
            StrandRead lr = lk ? StrandRead{ltape.substr(lp, lk), Direction::Right}
                               : lambda_read();
            std::string next = m.states[rng.pick(nstates)];
            m.transitions.push_back({current, ur, lr, next});
            up += uk;
            lp += lk;
            current = std::move(next);
        }
        if (!m.is_final(current)) m.finals.push_back(current);
    }

    const std::size_t room = limits.max_transitions - std::min(limits.max_transitions,
                                                               m.transitions.size());
    const std::size_t noise =
        m.transitions.empty() ? 1 + rng.pick(limits.max_transitions) : rng.pick(room + 1);
    for (std::size_t i = 0; i < noise; ++i) {
        TwoWayTransition t;
        t.from = m.states[rng.pick(nstates)];
        t.to = m.states[rng.pick(nstates)];
        t.upper = random_read(rng, sigma);
        t.lower = random_read(rng, sigma);
        while (t.upper.is_lambda() && t.lower.is_lambda()) t.lower = random_read(rng, sigma);
        m.transitions.push_back(std::move(t));
    }
    return m;
}

std::vector<std::string> enumerate_words(const Alphabet& alphabet, std::size_t max_len) {
    std::vector<std::string> out{""};
    std::size_t block_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t block_end = out.size();
        for (std::size_t i = block_begin; i < block_end; ++i)
            for (char c : alphabet.symbols()) out.push_back(out[i] + c);
        block_begin = block_end;
    }
    return out;
}

namespace {

template <typename Machine>
bool word_accepted(const Machine& m, const std::string& w);

template <>
bool word_accepted(const TwoWayMachine& m, const std::string& w) {
    return accepts_two_way(m, w).accepted();
}

template <>
bool word_accepted(const OneWayMachine& m, const std::string& w) {
    return accepts_one_way(m, w).accepted();
}

template <typename Machine>
std::vector<char> sweep_serial_impl(const Machine& m, const std::vector<std::string>& words) {
    std::vector<char> out(words.size(), 0);
    for (std::size_t i = 0; i < words.size(); ++i)
        out[i] = word_accepted(m, words[i]) ? 1 : 0;
    return out;
}

// Queries are independent and share only the immutable machine, so the sweep
// parallelizes per word. Exceptions may not cross the parallel region.
template <typename Machine>
std::vector<char> sweep_parallel_impl(const Machine& m,
                                      const std::vector<std::string>& words) {
    std::vector<char> out(words.size(), 0);
    std::exception_ptr failure = nullptr;
    const std::int64_t n = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                word_accepted(m, words[static_cast<std::size_t>(i)]) ? 1 : 0;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

template <typename Machine>
std::size_t default_cap();

template <>
std::size_t default_cap<TwoWayMachine>() { return kTwoWayLenCap; }

template <>
std::size_t default_cap<OneWayMachine>() { return kOneWayLenCap; }

template <typename Machine>
std::vector<char> sweep(const Machine& m, const std::vector<std::string>& words,
                        Execution execution) {
    return execution == Execution::Serial ? sweep_serial_impl(m, words)
                                          : sweep_parallel_impl(m, words);
}

template <typename Machine>
void check_cap(std::size_t max_len, const SweepOptions& options) {
    const std::size_t cap = options.length_cap.value_or(default_cap<Machine>());
    if (max_len > cap)
        throw std::invalid_argument("max_len " + std::to_string(max_len) +
                                    " exceeds the enumeration cap " + std::to_string(cap));
}

template <typename Machine>
LanguageSample sample_impl(const Machine& m, std::size_t max_len, SweepOptions options) {
    check_cap<Machine>(max_len, options);
    const auto words = enumerate_words(m.alphabet, max_len);
    const auto verdicts = sweep(m, words, options.execution);
    LanguageSample sample;
    sample.max_len = max_len;
    for (std::size_t i = 0; i < words.size(); ++i)
        if (verdicts[i]) sample.accepted.push_back(words[i]);
    return sample;
}

template <typename Machine>
EquivalenceReport equivalent_impl(const Machine& m1, const Machine& m2,
                                  std::size_t max_len, SweepOptions options) {
    if (m1.alphabet != m2.alphabet)
        throw std::invalid_argument("machines have different alphabets");
    check_cap<Machine>(max_len, options);
    const auto words = enumerate_words(m1.alphabet, max_len);
    const auto a = sweep(m1, words, options.execution);
    const auto b = sweep(m2, words, options.execution);
    EquivalenceReport report;
    report.max_len = max_len;
    report.checked = words.size();
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (a[i] != b[i]) {
            report.equivalent = false;
            report.counterexample = words[i];
            report.only_accepted_by = a[i] ? 1 : 2;
            break;
        }
    }
    return report;
}

}  // namespace

std::vector<char> sweep_membership_serial(const TwoWayMachine& m,
                                          const std::vector<std::string>& words) {
    return sweep_serial_impl(m, words);
}

std::vector<char> sweep_membership_parallel(const TwoWayMachine& m,
                                            const std::vector<std::string>& words) {
    return sweep_parallel_impl(m, words);
}

std::vector<char> sweep_membership_serial(const OneWayMachine& m,
                                          const std::vector<std::string>& words) {
    return sweep_serial_impl(m, words);
}

std::vector<char> sweep_membership_parallel(const OneWayMachine& m,
                                            const std::vector<std::string>& words) {
    return sweep_parallel_impl(m, words);
}

LanguageSample language_sample(const TwoWayMachine& m, std::size_t max_len,
                               SweepOptions options) {
    return sample_impl(m, max_len, options);
}

LanguageSample language_sample(const OneWayMachine& m, std::size_t max_len,
                               SweepOptions options) {
    return sample_impl(m, max_len, options);
}

EquivalenceReport equivalent_up_to(const TwoWayMachine& m1, const TwoWayMachine& m2,
                                   std::size_t max_len, SweepOptions options) {
    return equivalent_impl(m1, m2, max_len, options);
}

EquivalenceReport equivalent_up_to(const OneWayMachine& m1, const OneWayMachine& m2,
                                   std::size_t max_len, SweepOptions options) {
    return equivalent_impl(m1, m2, max_len, options);
}

}  // namespace wk
