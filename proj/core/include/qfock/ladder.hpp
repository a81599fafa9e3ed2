#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qfock/fock_vector.hpp"
#include "qfock/gram_cache.hpp"
#include "qfock/qspec.hpp"

namespace qfock {

enum class Side { left, right };
enum class Kind { create, annihilate };

// One creation/annihilation symbol: l_i, r_i, l_i*, r_i*.
struct LadderSymbol {
  Side side;
  Kind kind;
  int letter;

  std::string str() const;
  bool operator==(const LadderSymbol&) const = default;
};

// A product of ladder symbols in composition order as written: the last
// element of `symbols` is applied first. net_degree is the degree shift
// (#create - #annihilate) of the full word.
struct LadderWord {
  std::vector<LadderSymbol> symbols;

  int net_degree() const;
  // Creations then annihilations on the left, then creations then
  // annihilations on the right, each group possibly empty. This is the
  // shape of the projected probe words zeta_n.
  bool is_canonical_zeta_form() const;
  // Largest running degree shift over suffixes of the word (the first
  // applied symbol is the last suffix element); bounds intermediate degrees.
  int max_intermediate_degree_shift() const;

  // Compact text form, e.g. "l2* r2" (a '*' marks annihilation).
  static LadderWord parse(const std::string& text);
  std::string str() const;
};

enum class TruncationMode { strict, lenient };

// Strict mode raises TruncationError when a creation would push nonzero
// mass past max_degree. Lenient mode drops that block and, when a sink is
// provided, accumulates its squared free norm.
struct TruncationPolicy {
  TruncationMode mode = TruncationMode::strict;
  double* lost_mass2 = nullptr;
};

FockVector apply_create(const QSpec& q, const LadderSymbol& sym, const FockVector& v,
                        const TruncationPolicy& policy = {});
FockVector apply_annihilate(const QSpec& q, const LadderSymbol& sym, const FockVector& v);

// Degree-block form of the annihilation action: the degree-(n-1) image of
// a degree-n coefficient block under l_i* (left) or r_i* (right).
Eigen::VectorXd annihilate_block(const QSpec& q, Side side, int letter,
                                 const Eigen::VectorXd& block, int degree);
FockVector apply_symbol(const QSpec& q, const LadderSymbol& sym, const FockVector& v,
                        const TruncationPolicy& policy = {});

// s_j = l_j + l_j* (side == left) or its right analogue r_j + r_j*.
FockVector apply_gaussian(const QSpec& q, int letter, const FockVector& v,
                          Side side = Side::left, const TruncationPolicy& policy = {});

FockVector apply_ladder_word(const QSpec& q, const LadderWord& word, const FockVector& v,
                             const TruncationPolicy& policy = {});

// Materialization of [l_i*, r_j] restricted to degree n together with its
// deformed operator norm. The block is diagonal in the word basis with
// entry delta_ij * prod_p q(i, w_p) on word w (and equals delta_ij at
// degree 0); it is materialized through the generic ladder actions so the
// closed form stays available as an independent oracle.
struct CommutatorBlock {
  Eigen::MatrixXd matrix;
  double deformed_norm;
};
CommutatorBlock commutator_block(const QSpec& q, int letter_i, int letter_j, int degree,
                                 GramCache& cache);

// Closed-form deformed norm of the same block: delta_ij * max over letter
// multisets of prod_p |q(i, w_p)|.
double commutator_block_norm_oracle(const QSpec& q, int letter_i, int letter_j, int degree);

// Decay probe for products a_word(b_word(xi0^n)): a_word must consist of
// left symbols whose leftmost (last applied) symbol annihilates a letter
// orthogonal to xi0, and b_word of right symbols; then the restricted norm
//   |(a_word b_word) xi0^n|_Q / |xi0^n|_Q
// is reported next to q_max^n for each n in [n_min, n_max].
struct Lemma3Row {
  int degree;
  double ratio;
  double q_max_pow;
};
std::vector<Lemma3Row> lemma3_bound_probe(const QSpec& q, const LadderWord& a_word,
                                          const LadderWord& b_word,
                                          const Eigen::VectorXd& xi0, int n_min, int n_max,
                                          int max_degree, GramCache& cache);

}  // namespace qfock
