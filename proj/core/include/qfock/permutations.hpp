#pragma once

#include <cstdint>
#include <vector>

namespace qfock {

// Permutations are one-line arrays of 0-based values; p[k] is the image of
// position k. Reduced words are sequences of 1-based adjacent-transposition
// sites, multiplied left to right: p = s_{w[0]} s_{w[1]} ... s_{w[back]}.

std::int64_t inversion_count(const std::vector<int>& p);

// Canonical reduced word along the bubble-sort path: record the swaps that
// sort the one-line notation, then reverse. Deterministic, length inv(p).
std::vector<int> reduced_word_bubble(std::vector<int> p);

// Lexicographically smallest reduced word: greedily take the smallest left
// descent at each step.
std::vector<int> reduced_word_lex(std::vector<int> p);

// All permutations of {0..n-1} in lexicographic one-line order.
std::vector<std::vector<int>> all_permutations(int n);

}  // namespace qfock
