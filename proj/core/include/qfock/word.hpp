#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfock/errors.hpp"

namespace qfock {

using Index = std::int64_t;

// A degree-n basis word (i_1,...,i_n) over the alphabet [1..N]; the empty
// word indexes the vacuum. Words enumerate the simple tensors
// e_{i_1} x ... x e_{i_n} of each graded block.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

  int degree() const { return static_cast<int>(letters.size()); }
  std::string str() const;

  bool operator==(const Word&) const = default;
};

// N^degree, guarded against overflow.
Index block_dim(int n_letters, int degree);

// Mixed-radix bijection with the first letter most significant:
// index = sum_k (letter_k - 1) * N^(n-k).
Index word_index(int n_letters, const Word& w);
Word index_word(int n_letters, int degree, Index index);

// Digits of `index` as 1-based letters, most significant first.
// Equivalent to index_word but writes into a caller buffer (hot paths).
void decode_letters(int n_letters, int degree, Index index, int* letters_out);

}  // namespace qfock
