#pragma once

#include <cstdint>

#include "trotter/fraction.hpp"
#include "trotter/word.hpp"

namespace trotter {

/// Largest word length N*n the breadth-first swap-distance oracle accepts.
inline constexpr int kBfsLengthLimit = 10;

/// Sum over prefixes j and letters k of |w_k[j] - v_k[j]| (the unnormalised
/// area between the two lattice paths in the N-letter convention).
std::int64_t prefix_gap_sum(const Word& w, const Word& v);

/// Area metric. Two letters: (1/n^2) sum_j |w_A[j] - v_A[j]|.
/// N >= 3: (1/(N^2 n^2)) sum_j sum_k |w_k[j] - v_k[j]|.
MetricValue rho1(const Word& w, const Word& v);

/// Sup metric: (2/n) max over j in 1..Nn and letters k of |w_k[j] - v_k[j]|.
MetricValue rho_inf(const Word& w, const Word& v);

/// Minimal number of adjacent transpositions turning w into v. Matches the
/// i-th occurrence of each letter in w with the i-th occurrence in v and counts
/// inversions of the induced position permutation.
std::int64_t swap_distance(const Word& w, const Word& v);

/// Shortest path in the adjacent-transposition graph, by BFS. Test oracle for
/// swap_distance; refuses words longer than kBfsLengthLimit.
std::int64_t swap_distance_bfs(const Word& w, const Word& v);

/// Span statistic: (1/n) max over j and letter pairs (k, l) of |w_k[j] - w_l[j]|.
MetricValue tau(const Word& w);

} // namespace trotter
