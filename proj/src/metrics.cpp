#include "trotter/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "trotter/errors.hpp"

namespace trotter {

namespace {

void require_same_shape(const Word& w, const Word& v) {
    if (w.n() != v.n() || w.alphabet() != v.alphabet())
        throw ShapeError("words have different (n, N): (" + std::to_string(w.n()) + ", " +
                         std::to_string(w.alphabet()) + ") vs (" + std::to_string(v.n()) + ", " +
                         std::to_string(v.alphabet()) + ")");
}

// Merge-sort inversion count.
std::int64_t count_inversions(std::vector<std::size_t>& a, std::vector<std::size_t>& scratch, std::size_t lo,
                              std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = count_inversions(a, scratch, lo, mid) + count_inversions(a, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[j] < a[i]) {
            inv += static_cast<std::int64_t>(mid - i);
            scratch[k++] = a[j++];
        } else {
            scratch[k++] = a[i++];
        }
    }
    while (i < mid) scratch[k++] = a[i++];
    while (j < hi) scratch[k++] = a[j++];
    std::copy(scratch.begin() + lo, scratch.begin() + hi, a.begin() + lo);
    return inv;
}

} // namespace

std::int64_t prefix_gap_sum(const Word& w, const Word& v) {
    require_same_shape(w, v);
    const PrefixCounts pw(w), pv(v);
    std::int64_t sum = 0;
    for (int k = 0; k < w.alphabet(); ++k)
        for (std::size_t j = 1; j <= w.size(); ++j) sum += std::abs(pw(k, j) - pv(k, j));
    return sum;
}

MetricValue rho1(const Word& w, const Word& v) {
    require_same_shape(w, v);
    const std::int64_t n = w.n();
    if (w.alphabet() == 2) {
        const PrefixCounts pw(w), pv(v);
        std::int64_t sum = 0;
        for (std::size_t j = 1; j <= w.size(); ++j) sum += std::abs(pw(0, j) - pv(0, j));
        return Fraction(sum, n * n);
    }
    const std::int64_t big_n = w.alphabet();
    return Fraction(prefix_gap_sum(w, v), big_n * big_n * n * n);
}

MetricValue rho_inf(const Word& w, const Word& v) {
    require_same_shape(w, v);
    const PrefixCounts pw(w), pv(v);
    int best = 0;
    for (int k = 0; k < w.alphabet(); ++k)
        for (std::size_t j = 1; j <= w.size(); ++j) best = std::max(best, std::abs(pw(k, j) - pv(k, j)));
    return Fraction(2 * static_cast<std::int64_t>(best), w.n());
}

std::int64_t swap_distance(const Word& w, const Word& v) {
    require_same_shape(w, v);
    // Positions in v of each letter, in order of occurrence.
    std::vector<std::vector<std::size_t>> where(v.alphabet());
    for (std::size_t i = 0; i < v.size(); ++i) where[v[i]].push_back(i);
    std::vector<std::size_t> next(v.alphabet(), 0);
    std::vector<std::size_t> target(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) target[i] = where[w[i]][next[w[i]]++];
    std::vector<std::size_t> scratch(target.size());
    return count_inversions(target, scratch, 0, target.size());
}

std::int64_t swap_distance_bfs(const Word& w, const Word& v) {
    require_same_shape(w, v);
    if (w.size() > static_cast<std::size_t>(kBfsLengthLimit))
        throw SizeLimitError("BFS swap distance limited to words of length " + std::to_string(kBfsLengthLimit) +
                             ", got " + std::to_string(w.size()));
    const std::string start = w.to_string();
    const std::string goal = v.to_string();
    std::unordered_map<std::string, std::int64_t> dist{{start, 0}};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
        std::string cur = std::move(queue.front());
        queue.pop_front();
        const std::int64_t d = dist[cur];
        if (cur == goal) return d;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            if (cur[i] == cur[i + 1]) continue;
            std::string nxt = cur;
            std::swap(nxt[i], nxt[i + 1]);
            if (dist.emplace(nxt, d + 1).second) queue.push_back(std::move(nxt));
        }
    }
    throw NumericalError("BFS exhausted without reaching the target word");
}

MetricValue tau(const Word& w) {
    const PrefixCounts p(w);
    int best = 0;
    for (std::size_t j = 1; j <= w.size(); ++j) {
        int lo = p(0, j), hi = p(0, j);
        for (int k = 1; k < w.alphabet(); ++k) {
            lo = std::min(lo, p(k, j));
            hi = std::max(hi, p(k, j));
        }
        best = std::max(best, hi - lo);
    }
    return Fraction(best, w.n());
}

} // namespace trotter
