#include "trotter/word.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "trotter/combinatorics.hpp"
#include "trotter/errors.hpp"

namespace trotter {

namespace {

constexpr int kMaxAlphabet = 26;

void check_shape(int n, int alphabet) {
    if (n < 1) throw DomainError("letters per symbol must be positive, got " + std::to_string(n));
    if (alphabet < 2 || alphabet > kMaxAlphabet)
        throw DomainError("alphabet size must be in [2, 26], got " + std::to_string(alphabet));
}

std::vector<Letter> sorted_letters(int n, int alphabet) {
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(n) * alphabet);
    for (int k = 0; k < alphabet; ++k) letters.insert(letters.end(), n, static_cast<Letter>(k));
    return letters;
}

BigCount remaining_arrangements(const std::vector<long>& counts) { return multinomial(counts); }

void enforce_cap(int n, int alphabet, int cap) {
    if (static_cast<long>(n) * alphabet <= cap) return;
    std::vector<long> parts(alphabet, n);
    std::ostringstream msg;
    msg << "enumeration of words with n=" << n << ", N=" << alphabet << " would generate "
        << multinomial(parts) << " words (length " << n * alphabet << " exceeds cap " << cap << ")";
    throw SizeLimitError(msg.str());
}

} // namespace

Word::Word(std::vector<Letter> letters, int n, int alphabet)
    : letters_(std::move(letters)), n_(n), alphabet_(alphabet) {
    check_shape(n, alphabet);
    if (letters_.size() != static_cast<std::size_t>(n) * alphabet)
        throw ShapeError("word length " + std::to_string(letters_.size()) + " differs from N*n = " +
                         std::to_string(n * alphabet));
    std::vector<int> counts(alphabet, 0);
    for (Letter l : letters_) {
        if (l >= alphabet) throw ShapeError("letter index " + std::to_string(l) + " outside alphabet");
        ++counts[l];
    }
    for (int k = 0; k < alphabet; ++k)
        if (counts[k] != n)
            throw ShapeError(std::string("letter ") + letter_char(static_cast<Letter>(k)) + " occurs " +
                             std::to_string(counts[k]) + " times, expected " + std::to_string(n));
}

Word Word::parse(std::string_view text, std::optional<int> alphabet) {
    if (text.empty()) throw ParseError("empty word");
    std::vector<Letter> letters;
    letters.reserve(text.size());
    int max_letter = 0;
    for (char c : text) {
        if (c < 'A' || c > 'Z') throw ParseError(std::string("invalid letter '") + c + "' in word");
        letters.push_back(static_cast<Letter>(c - 'A'));
        max_letter = std::max(max_letter, c - 'A');
    }
    const int n_letters = alphabet.value_or(max_letter + 1);
    if (n_letters < 2) throw ParseError("word must use at least two letters");
    if (max_letter >= n_letters) throw ParseError("word uses letters beyond its alphabet");
    if (letters.size() % n_letters != 0)
        throw ParseError("word length " + std::to_string(letters.size()) + " is not a multiple of " +
                         std::to_string(n_letters));
    const int n = static_cast<int>(letters.size()) / n_letters;
    try {
        return Word(std::move(letters), n, n_letters);
    } catch (const ShapeError& e) {
        throw ParseError(std::string("unbalanced word: ") + e.what());
    }
}

std::string Word::to_string() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(letter_char(l));
    return s;
}

Word Word::swapped(std::size_t i) const {
    if (i + 1 >= letters_.size()) throw DomainError("swap position out of range");
    Word out = *this;
    std::swap(out.letters_[i], out.letters_[i + 1]);
    return out;
}

char letter_char(Letter k) { return static_cast<char>('A' + k); }

PrefixCounts::PrefixCounts(const Word& w)
    : alphabet_(w.alphabet()), length_(w.size()), counts_(static_cast<std::size_t>(alphabet_) * (length_ + 1), 0) {
    for (int k = 0; k < alphabet_; ++k) {
        int* row = counts_.data() + k * (length_ + 1);
        for (std::size_t j = 1; j <= length_; ++j) row[j] = row[j - 1] + (w[j - 1] == k ? 1 : 0);
    }
}

PrefixCounts prefix_counts(const Word& w) { return PrefixCounts(w); }

std::vector<double> StepFunction::values() const {
    std::vector<double> out(heights.size());
    for (std::size_t i = 0; i < heights.size(); ++i) out[i] = value(i);
    return out;
}

StepFunction step_function(const Word& w) {
    if (w.alphabet() != 2)
        throw UnsupportedAlphabetError("step functions are defined for two-letter words only");
    StepFunction f;
    f.n = w.n();
    f.heights.reserve(w.n());
    int b_seen = 0;
    for (Letter l : w.letters()) {
        if (l == 0)
            f.heights.push_back(b_seen);
        else
            ++b_seen;
    }
    return f;
}

Word word_from_step_function(const StepFunction& f) {
    if (f.n < 1 || f.heights.size() != static_cast<std::size_t>(f.n))
        throw ShapeError("step function must have exactly n levels");
    for (std::size_t i = 0; i < f.heights.size(); ++i) {
        if (f.heights[i] < 0 || f.heights[i] > f.n) throw DomainError("step function level outside [0, 1]");
        if (i > 0 && f.heights[i] < f.heights[i - 1]) throw DomainError("step function is not non-decreasing");
    }
    std::vector<Letter> letters(static_cast<std::size_t>(2 * f.n), 1);
    for (std::size_t i = 0; i < f.heights.size(); ++i) letters[i + f.heights[i]] = 0;
    return Word(std::move(letters), f.n, 2);
}

Word standard_word(int n, int alphabet) {
    check_shape(n, alphabet);
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(n) * alphabet);
    for (int rep = 0; rep < n; ++rep)
        for (int k = 0; k < alphabet; ++k) letters.push_back(static_cast<Letter>(k));
    return Word(std::move(letters), n, alphabet);
}

std::uint64_t word_count(int n, int alphabet) {
    check_shape(n, alphabet);
    const BigCount c = multinomial(std::vector<long>(alphabet, n));
    if (c > std::numeric_limits<std::uint64_t>::max())
        throw SizeLimitError("word count " + c.str() + " does not fit in 64 bits");
    return static_cast<std::uint64_t>(c);
}

Word unrank_word(int n, int alphabet, std::uint64_t rank) {
    const std::uint64_t total = word_count(n, alphabet);
    if (rank >= total) throw DomainError("rank " + std::to_string(rank) + " out of range");
    std::vector<long> counts(alphabet, n);
    const std::size_t length = static_cast<std::size_t>(n) * alphabet;
    std::vector<Letter> letters;
    letters.reserve(length);
    BigCount r = rank;
    for (std::size_t pos = 0; pos < length; ++pos) {
        for (int k = 0; k < alphabet; ++k) {
            if (counts[k] == 0) continue;
            --counts[k];
            const BigCount block = remaining_arrangements(counts);
            if (r < block) {
                letters.push_back(static_cast<Letter>(k));
                break;
            }
            r -= block;
            ++counts[k];
        }
    }
    return Word(std::move(letters), n, alphabet);
}

std::uint64_t rank_word(const Word& w) {
    std::vector<long> counts(w.alphabet(), w.n());
    BigCount rank = 0;
    for (Letter l : w.letters()) {
        for (int k = 0; k < l; ++k) {
            if (counts[k] == 0) continue;
            --counts[k];
            rank += remaining_arrangements(counts);
            ++counts[k];
        }
        --counts[l];
    }
    return static_cast<std::uint64_t>(rank);
}

WordStream::WordStream(int n, int alphabet, int cap) : n_(n), alphabet_(alphabet) {
    check_shape(n, alphabet);
    enforce_cap(n, alphabet, cap);
    total_ = word_count(n, alphabet);
    remaining_ = total_;
    current_ = sorted_letters(n, alphabet);
}

WordStream::WordStream(int n, int alphabet, std::uint64_t first, std::uint64_t count, int cap)
    : n_(n), alphabet_(alphabet) {
    check_shape(n, alphabet);
    enforce_cap(n, alphabet, cap);
    total_ = word_count(n, alphabet);
    if (first > total_) throw DomainError("rank range starts past the end");
    remaining_ = std::min(count, total_ - first);
    if (remaining_ > 0) {
        const Word start = unrank_word(n, alphabet, first);
        current_.assign(start.letters().begin(), start.letters().end());
    } else {
        current_ = sorted_letters(n, alphabet);
    }
}

std::optional<Word> WordStream::next() {
    if (remaining_ == 0) return std::nullopt;
    if (started_) std::next_permutation(current_.begin(), current_.end());
    started_ = true;
    --remaining_;
    return Word(current_, n_, alphabet_);
}

std::vector<Word> enumerate_words(int n, int alphabet, int cap) {
    WordStream stream(n, alphabet, cap);
    std::vector<Word> out;
    out.reserve(stream.total());
    while (auto w = stream.next()) out.push_back(std::move(*w));
    return out;
}

void for_each_word(int n, int alphabet, const std::function<void(const Word&)>& fn, int cap) {
    WordStream stream(n, alphabet, cap);
    while (auto w = stream.next()) fn(*w);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw DomainError("uniform_below needs a positive bound");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

Word sample_word(int n, int alphabet, std::mt19937_64& rng) {
    check_shape(n, alphabet);
    std::vector<Letter> letters = sorted_letters(n, alphabet);
    for (std::size_t i = letters.size() - 1; i > 0; --i) {
        const std::size_t j = uniform_below(rng, i + 1);
        std::swap(letters[i], letters[j]);
    }
    return Word(std::move(letters), n, alphabet);
}

Word sample_word(int n, int alphabet, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_word(n, alphabet, rng);
}

} // namespace trotter
