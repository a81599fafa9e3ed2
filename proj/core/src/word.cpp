#include "qfock/word.hpp"

#include <limits>

namespace qfock {

std::string Word::str() const {
  std::string out = "(";
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(letters[k]);
  }
  return out + ")";
}

Index block_dim(int n_letters, int degree) {
  if (n_letters < 1) throw ArgumentError("N must be >= 1");
  if (degree < 0) throw ArgumentError("degree must be >= 0");
  Index dim = 1;
  for (int k = 0; k < degree; ++k) {
    if (dim > std::numeric_limits<Index>::max() / n_letters)
      throw CapabilityError("block dimension N^n overflows the index type");
    dim *= n_letters;
  }
  return dim;
}

Index word_index(int n_letters, const Word& w) {
  Index idx = 0;
  for (int letter : w.letters) {
    if (letter < 1 || letter > n_letters)
      throw ArgumentError("letter " + std::to_string(letter) + " out of range [1.." +
                          std::to_string(n_letters) + "]");
    idx = idx * n_letters + (letter - 1);
  }
  return idx;
}

Word index_word(int n_letters, int degree, Index index) {
  const Index dim = block_dim(n_letters, degree);
  if (index < 0 || index >= dim)
    throw ArgumentError("word index " + std::to_string(index) + " out of range [0.." +
                        std::to_string(dim) + ")");
  Word w;
  w.letters.resize(degree);
  decode_letters(n_letters, degree, index, w.letters.data());
  return w;
}

void decode_letters(int n_letters, int degree, Index index, int* letters_out) {
  for (int k = degree - 1; k >= 0; --k) {
    letters_out[k] = static_cast<int>(index % n_letters) + 1;
    index /= n_letters;
  }
}

}  // namespace qfock
