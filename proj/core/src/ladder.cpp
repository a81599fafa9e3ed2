#include "qfock/ladder.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace qfock {

std::string LadderSymbol::str() const {
  std::string s = side == Side::left ? "l" : "r";
  s += std::to_string(letter);
  if (kind == Kind::annihilate) s += "*";
  return s;
}

int LadderWord::net_degree() const {
  int net = 0;
  for (const auto& s : symbols) net += s.kind == Kind::create ? 1 : -1;
  return net;
}

bool LadderWord::is_canonical_zeta_form() const {
  // Written order: left creations, left annihilations, right creations,
  // right annihilations.
  auto stage = [](const LadderSymbol& s) {
    if (s.side == Side::left) return s.kind == Kind::create ? 0 : 1;
    return s.kind == Kind::create ? 2 : 3;
  };
  int current = 0;
  for (const auto& s : symbols) {
    if (stage(s) < current) return false;
    current = stage(s);
  }
  return true;
}

int LadderWord::max_intermediate_degree_shift() const {
  int net = 0, peak = 0;
  for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) {
    net += it->kind == Kind::create ? 1 : -1;
    peak = std::max(peak, net);
  }
  return peak;
}

LadderWord LadderWord::parse(const std::string& text) {
  LadderWord word;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token.size() < 2 || (token[0] != 'l' && token[0] != 'r'))
      throw ArgumentError("bad ladder symbol '" + token + "' (expected e.g. l2, r1*)");
    LadderSymbol sym;
    sym.side = token[0] == 'l' ? Side::left : Side::right;
    sym.kind = Kind::create;
    std::string digits = token.substr(1);
    if (!digits.empty() && digits.back() == '*') {
      sym.kind = Kind::annihilate;
      digits.pop_back();
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) {
          return std::isdigit(c);
        }))
      throw ArgumentError("bad ladder symbol '" + token + "' (expected e.g. l2, r1*)");
    sym.letter = std::stoi(digits);
    word.symbols.push_back(sym);
  }
  return word;
}

std::string LadderWord::str() const {
  std::string out;
  for (const auto& s : symbols) {
    if (!out.empty()) out += " ";
    out += s.str();
  }
  return out;
}

FockVector apply_create(const QSpec& q, const LadderSymbol& sym, const FockVector& v,
                        const TruncationPolicy& policy) {
  if (sym.kind != Kind::create) throw ArgumentError("apply_create needs a creation symbol");
  q.check_letter(sym.letter);
  if (v.n_letters() != q.n_letters())
    throw ArgumentError("vector alphabet does not match QSpec");

  const int n_letters = q.n_letters();
  const int d = v.max_degree();
  if (!v.block(d).isZero(0.0)) {
    if (policy.mode == TruncationMode::strict)
      throw TruncationError("creation " + sym.str() + " would push degree " +
                            std::to_string(d) + " mass past max_degree " +
                            std::to_string(d));
    if (policy.lost_mass2) *policy.lost_mass2 += v.block(d).squaredNorm();
  }

  FockVector out(n_letters, d);
  for (int n = 0; n < d; ++n) {
    const auto& in = v.block(n);
    if (in.isZero(0.0)) continue;
    auto& target = out.block(n + 1);
    if (sym.side == Side::left) {
      // prepend: index(i, w) = (i-1) N^n + index(w)
      target.segment((sym.letter - 1) * in.size(), in.size()) = in;
    } else {
      // append: index(w, i) = index(w) N + (i-1)
      for (Index k = 0; k < in.size(); ++k)
        target(k * n_letters + (sym.letter - 1)) = in(k);
    }
  }
  return out;
}

Eigen::VectorXd annihilate_block(const QSpec& q, Side side, int letter,
                                 const Eigen::VectorXd& block, int degree) {
  q.check_letter(letter);
  const int n_letters = q.n_letters();
  if (degree < 1) throw ArgumentError("annihilate_block needs degree >= 1");
  if (block.size() != block_dim(n_letters, degree))
    throw ArgumentError("block has wrong dimension for degree");

  const int i = letter;
  const int n = degree;
  Eigen::VectorXd target = Eigen::VectorXd::Zero(block.size() / n_letters);
  std::vector<int> letters(n);

  // Left: l_i* e_w = sum over slots k with w_k = i of
  //         (prod_{m<k} q(i, w_m)) e_{w minus slot k};
  // right: mirror image with the q-product over the later slots. The
  // products accumulate in slot order so that the two factor orders of the
  // commutation identities cancel bit for bit where they should.
  for (Index idx = 0; idx < block.size(); ++idx) {
    const double c = block(idx);
    if (c == 0.0) continue;
    decode_letters(n_letters, n, idx, letters.data());
    if (side == Side::left) {
      double prod = 1.0;
      Index prefix = 0;
      Index pw = block.size() / n_letters;  // N^(n-k) at k = 1
      for (int k = 1; k <= n; ++k) {
        if (letters[k - 1] == i) target(prefix * pw + idx % pw) += c * prod;
        prod *= q.q(i, letters[k - 1]);
        prefix = prefix * n_letters + (letters[k - 1] - 1);
        pw /= n_letters;
      }
    } else {
      double prod = 1.0;
      Index pw = 1;  // N^(n-k) at k = n
      for (int k = n; k >= 1; --k) {
        if (letters[k - 1] == i) {
          const Index hi = idx / (pw * n_letters);
          target(hi * pw + idx % pw) += c * prod;
        }
        prod *= q.q(i, letters[k - 1]);
        pw *= n_letters;
      }
    }
  }
  return target;
}

FockVector apply_annihilate(const QSpec& q, const LadderSymbol& sym, const FockVector& v) {
  if (sym.kind != Kind::annihilate)
    throw ArgumentError("apply_annihilate needs an annihilation symbol");
  q.check_letter(sym.letter);
  if (v.n_letters() != q.n_letters())
    throw ArgumentError("vector alphabet does not match QSpec");

  FockVector out(q.n_letters(), v.max_degree());
  for (int n = 1; n <= v.max_degree(); ++n) {
    const auto& in = v.block(n);
    if (in.isZero(0.0)) continue;
    out.block(n - 1) += annihilate_block(q, sym.side, sym.letter, in, n);
  }
  return out;
}

FockVector apply_symbol(const QSpec& q, const LadderSymbol& sym, const FockVector& v,
                        const TruncationPolicy& policy) {
  return sym.kind == Kind::create ? apply_create(q, sym, v, policy)
                                  : apply_annihilate(q, sym, v);
}

FockVector apply_gaussian(const QSpec& q, int letter, const FockVector& v, Side side,
                          const TruncationPolicy& policy) {
  FockVector out = apply_create(q, LadderSymbol{side, Kind::create, letter}, v, policy);
  out += apply_annihilate(q, LadderSymbol{side, Kind::annihilate, letter}, v);
  return out;
}

FockVector apply_ladder_word(const QSpec& q, const LadderWord& word, const FockVector& v,
                             const TruncationPolicy& policy) {
  FockVector out = v;
  for (auto it = word.symbols.rbegin(); it != word.symbols.rend(); ++it) {
    if (it->kind == Kind::create) {
      try {
        out = apply_create(q, *it, out, policy);
      } catch (const TruncationError&) {
        throw TruncationError("ladder word '" + word.str() + "' overflows max_degree at symbol " +
                              it->str());
      }
    } else {
      out = apply_annihilate(q, *it, out);
    }
  }
  return out;
}

CommutatorBlock commutator_block(const QSpec& q, int letter_i, int letter_j, int degree,
                                 GramCache& cache) {
  q.check_letter(letter_i);
  q.check_letter(letter_j);
  if (degree < 0) throw ArgumentError("degree must be >= 0");
  const Index dim = block_dim(q.n_letters(), degree);
  const std::size_t need = sizeof(double) * static_cast<std::size_t>(dim) *
                           static_cast<std::size_t>(dim);
  if (cache.bytes_in_use() + need > cache.budget_bytes())
    throw CapabilityError("materializing a degree-" + std::to_string(degree) +
                              " commutator block needs " + std::to_string(need) + " bytes",
                          cache.bytes_in_use() + need, cache.budget_bytes());

  const LadderSymbol ann{Side::left, Kind::annihilate, letter_i};
  const LadderSymbol cre{Side::right, Kind::create, letter_j};
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(dim, dim);
  for (Index col = 0; col < dim; ++col) {
    FockVector e = FockVector::basis_word(q.n_letters(), degree + 1,
                                          index_word(q.n_letters(), degree, col));
    FockVector lr = apply_annihilate(q, ann, apply_create(q, cre, e));
    FockVector rl = apply_create(q, cre, apply_annihilate(q, ann, e));
    block.col(col) = lr.block(degree) - rl.block(degree);
  }
  cache.ensure_degree(degree);
  const double norm = cache.operator_norm(block, degree, degree);
  return CommutatorBlock{std::move(block), norm};
}

double commutator_block_norm_oracle(const QSpec& q, int letter_i, int letter_j,
                                    int degree) {
  if (letter_i != letter_j) return 0.0;
  if (degree == 0) return 1.0;
  // The block is diagonal with entry prod_p q(i, w_p); the letters maximize
  // independently and the operator is normal for the deformed inner
  // product, so the norm is the largest absolute entry.
  double best = 0.0;
  for (int k = 1; k <= q.n_letters(); ++k) best = std::max(best, std::abs(q.q(letter_i, k)));
  return std::pow(best, degree);
}

std::vector<Lemma3Row> lemma3_bound_probe(const QSpec& q, const LadderWord& a_word,
                                          const LadderWord& b_word,
                                          const Eigen::VectorXd& xi0, int n_min, int n_max,
                                          int max_degree, GramCache& cache) {
  if (xi0.size() != q.n_letters()) throw ArgumentError("xi0 has wrong dimension");
  if (a_word.symbols.empty())
    throw PreconditionError("a_word must be nonempty (its leftmost symbol carries the "
                            "annihilation hypothesis)");
  for (const auto& s : a_word.symbols)
    if (s.side != Side::left)
      throw PreconditionError("a_word must consist of left symbols, found " + s.str());
  for (const auto& s : b_word.symbols)
    if (s.side != Side::right)
      throw PreconditionError("b_word must consist of right symbols, found " + s.str());
  const LadderSymbol& last = a_word.symbols.front();
  if (last.kind != Kind::annihilate)
    throw PreconditionError("leftmost a-symbol must annihilate, found " + last.str());
  if (std::abs(xi0(last.letter - 1)) > 1e-12 * xi0.norm())
    throw PreconditionError("leftmost a-symbol " + last.str() +
                            " does not annihilate a letter orthogonal to xi0");

  LadderWord full;
  full.symbols = a_word.symbols;
  full.symbols.insert(full.symbols.end(), b_word.symbols.begin(), b_word.symbols.end());

  std::vector<Lemma3Row> rows;
  for (int n = n_min; n <= n_max; ++n) {
    FockVector xin = FockVector::tensor_power(q.n_letters(), max_degree, xi0, n);
    FockVector image = apply_ladder_word(q, full, xin);
    const int top = std::max(image.top_degree(), n);
    cache.ensure_up_to(std::max(top, 0));
    const double denom = cache.norm(xin);
    rows.push_back({n, cache.norm(image) / denom, std::pow(q.q_max(), n)});
  }
  return rows;
}

}  // namespace qfock
