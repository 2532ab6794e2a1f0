#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wldl/ast.hpp"
#include "wldl/omega.hpp"
#include "wldl/semiring.hpp"

namespace wldl {

/// Seeded generator of random formulas, expressions and words. Every
/// recursive choice is a leaf with probability 1/2 and always at depth 0.
/// Weights come from {0, 1, 2, 3, 1/2}, restricted to the carrier.
/// Iteration bodies are resampled until proper.
class RandomAst {
 public:
  RandomAst(std::uint64_t seed, Alphabet alphabet, Semiring semiring);

  /// Negation only directly above atoms in LDL_ω formulas.
  void set_negation_light(bool on) { negation_light_ = on; }

  /// A random tree of `sort` with depth at most `depth` whose root is not a
  /// leaf (unless depth is 0).
  Ast generate(Sort sort, int depth);

  Ast prop(int depth);
  Ast ldl(int depth);
  Ast ldl_path(int depth);
  Ast ldlo(int depth);
  Ast ldlo_path(int depth);
  Ast wldl(int depth);
  Ast wpath(int depth);
  Ast wldlo(int depth);
  Ast wpatho(int depth);
  Ast gre(int depth);
  Ast greo(int depth);
  Ast ltl(int depth);
  Ast wltl(int depth);

  Weight weight();
  Word word(std::size_t max_length);
  LassoWord lasso(std::size_t max_stem, std::size_t max_loop);

  std::mt19937_64& engine() { return rng_; }

 private:
  bool leaf(int depth);
  std::size_t pick(std::size_t n);
  char letter();
  Ast proper_wpath(int depth);
  Ast proper_gre(int depth);

  std::mt19937_64 rng_;
  Alphabet alphabet_;
  Semiring semiring_;
  std::vector<Weight> weights_;
  bool negation_light_ = false;
  bool internal_root_ = false;
};

/// All words over `alphabet` of length at most `max_length`, in shortlex order.
std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_length);

}  // namespace wldl
