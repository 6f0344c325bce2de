#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trotter {

using Letter = std::uint8_t;

/// Default bound on the word length N*n accepted by exhaustive enumeration.
inline constexpr int kDefaultEnumerationCap = 24;

/// A word over the alphabet {0, ..., N-1} in which every letter occurs exactly
/// n times. Immutable once constructed.
class Word {
public:
    /// Validates that every letter in [0, alphabet) occurs exactly `n` times.
    Word(std::vector<Letter> letters, int n, int alphabet);

    /// Parses "AABB"-style text. The alphabet size is taken from the largest
    /// letter present unless given explicitly.
    static Word parse(std::string_view text, std::optional<int> alphabet = std::nullopt);

    int n() const noexcept { return n_; }
    int alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return letters_.size(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    std::span<const Letter> letters() const noexcept { return letters_; }

    std::string to_string() const;

    /// Copy with positions i and i+1 exchanged.
    Word swapped(std::size_t i) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.letters_ <=> b.letters_; }

private:
    std::vector<Letter> letters_;
    int n_;
    int alphabet_;
};

char letter_char(Letter k);

/// counts[k][j] = occurrences of letter k among the first j letters,
/// for 0 <= j <= N*n (column 0 is all zeros).
class PrefixCounts {
public:
    explicit PrefixCounts(const Word& w);

    int alphabet() const noexcept { return alphabet_; }
    std::size_t length() const noexcept { return length_; }
    int operator()(int letter, std::size_t j) const { return counts_[letter * (length_ + 1) + j]; }
    /// Row for one letter, indexed by j = 0..length.
    std::span<const int> row(int letter) const {
        return std::span<const int>(counts_).subspan(letter * (length_ + 1), length_ + 1);
    }

private:
    int alphabet_;
    std::size_t length_;
    std::vector<int> counts_;
};

PrefixCounts prefix_counts(const Word& w);

/// Non-decreasing step function on [0,1] attached to a two-letter word.
/// heights[i] is the number of B's before the (i+1)-th A; the function takes the
/// value heights[i]/n on ((i)/n, (i+1)/n).
struct StepFunction {
    int n = 0;
    std::vector<int> heights;

    double value(std::size_t i) const { return static_cast<double>(heights[i]) / n; }
    std::vector<double> values() const;

    friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

StepFunction step_function(const Word& w);

/// Inverse of step_function: the i-th A sits at position i + heights[i].
Word word_from_step_function(const StepFunction& f);

/// The cyclic word A_1 A_2 ... A_N repeated n times.
Word standard_word(int n, int alphabet);

/// Number of words in W_n^(N); throws SizeLimitError if it does not fit 64 bits.
std::uint64_t word_count(int n, int alphabet);

/// The word of lexicographic rank `rank` (0-based) in W_n^(N).
Word unrank_word(int n, int alphabet, std::uint64_t rank);

/// Lexicographic rank of w in its set.
std::uint64_t rank_word(const Word& w);

/// Streams W_n^(N) in lexicographic order, optionally restricted to the rank
/// range [first, first + count). Construction enforces the enumeration cap.
class WordStream {
public:
    WordStream(int n, int alphabet, int cap = kDefaultEnumerationCap);
    WordStream(int n, int alphabet, std::uint64_t first, std::uint64_t count,
               int cap = kDefaultEnumerationCap);

    /// Next word, or nullopt when the range is exhausted.
    std::optional<Word> next();

    std::uint64_t total() const noexcept { return total_; }

private:
    int n_;
    int alphabet_;
    std::vector<Letter> current_;
    std::uint64_t remaining_;
    std::uint64_t total_;
    bool started_ = false;
};

/// Every word of W_n^(N) in lexicographic order.
std::vector<Word> enumerate_words(int n, int alphabet, int cap = kDefaultEnumerationCap);

/// Calls fn on each word in lexicographic order without materialising the set.
void for_each_word(int n, int alphabet, const std::function<void(const Word&)>& fn,
                   int cap = kDefaultEnumerationCap);

/// Uniform random index in [0, bound) drawn by rejection, so the stream of
/// results depends only on the engine (unlike std::uniform_int_distribution).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Uniform word from W_n^(N) using the given engine (Fisher-Yates on the
/// sorted multiset).
Word sample_word(int n, int alphabet, std::mt19937_64& rng);

/// Uniform word from W_n^(N), deterministic in `seed`.
Word sample_word(int n, int alphabet, std::uint64_t seed);

} // namespace trotter
