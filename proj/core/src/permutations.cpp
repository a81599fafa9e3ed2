#include "qfock/permutations.hpp"

#include <algorithm>
#include <numeric>

namespace qfock {

std::int64_t inversion_count(const std::vector<int>& p) {
  std::int64_t inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv;
}

std::vector<int> reduced_word_bubble(std::vector<int> p) {
  // Bubble-sorting the one-line notation right-multiplies by the recorded
  // generators, so p = s_{w_k} ... s_{w_1}; reversing yields a reduced
  // word of p read left to right. Each swap removes one inversion.
  std::vector<int> word;
  const int n = static_cast<int>(p.size());
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (int j = 0; j + 1 < n; ++j) {
      if (p[j] > p[j + 1]) {
        std::swap(p[j], p[j + 1]);
        word.push_back(j + 1);  // 1-based site
        swapped = true;
      }
    }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::vector<int> reduced_word_lex(std::vector<int> p) {
  // Greedy smallest left descent: i is available iff value i appears after
  // value i+1. Left-multiplying by s_i swaps the values i and i+1 and
  // removes exactly that inversion, so the word is reduced and
  // lexicographically smallest.
  const int n = static_cast<int>(p.size());
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[p[k]] = k;
  std::vector<int> word;
  for (;;) {
    int pick = -1;
    for (int v = 0; v + 1 < n; ++v) {
      if (pos[v] > pos[v + 1]) {
        pick = v;
        break;
      }
    }
    if (pick < 0) break;
    std::swap(p[pos[pick]], p[pos[pick + 1]]);
    std::swap(pos[pick], pos[pick + 1]);
    word.push_back(pick + 1);  // 1-based generator
  }
  return word;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace qfock
