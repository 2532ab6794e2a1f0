#include "wldl/random.hpp"

#include "wldl/error.hpp"
#include "wldl/finite_semantics.hpp"

namespace wldl {

namespace {

constexpr int kMaxResample = 200;

}  // namespace

RandomAst::RandomAst(std::uint64_t seed, Alphabet alphabet, Semiring semiring)
    : rng_(seed), alphabet_(std::move(alphabet)), semiring_(semiring) {
  if (alphabet_.empty()) throw UsageError("random generation needs a nonempty alphabet");
  for (const char* literal : {"0", "1", "2", "3", "1/2"}) {
    try {
      weights_.push_back(semiring_.parse(literal));
    } catch (const UsageError&) {
    }
  }
}

bool RandomAst::leaf(int depth) {
  if (internal_root_) {
    internal_root_ = false;
    return depth <= 0;
  }
  return depth <= 0 || pick(2) == 0;
}

std::size_t RandomAst::pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

char RandomAst::letter() { return alphabet_[pick(alphabet_.size())]; }

Weight RandomAst::weight() { return weights_[pick(weights_.size())]; }

Word RandomAst::word(std::size_t max_length) {
  Word w(pick(max_length + 1), 'a');
  for (auto& c : w) c = letter();
  return w;
}

LassoWord RandomAst::lasso(std::size_t max_stem, std::size_t max_loop) {
  Word u = word(max_stem);
  Word v(1 + pick(max_loop), 'a');
  for (auto& c : v) c = letter();
  return LassoWord(std::move(u), std::move(v));
}

Ast RandomAst::generate(Sort sort, int depth) {
  internal_root_ = true;
  switch (sort) {
    case Sort::Prop: return prop(depth);
    case Sort::Ldl: return ldl(depth);
    case Sort::LdlPath: return ldl_path(depth);
    case Sort::LdlOmega: return ldlo(depth);
    case Sort::LdlOmegaPath: return ldlo_path(depth);
    case Sort::WLdl: return wldl(depth);
    case Sort::WPath: return proper_wpath(depth);
    case Sort::WLdlOmega: return wldlo(depth);
    case Sort::WPathOmega: return wpatho(depth);
    case Sort::Gre: return gre(depth);
    case Sort::GreOmega: return greo(depth);
    case Sort::Ltl: return ltl(depth);
    case Sort::WLtl: return wltl(depth);
  }
  throw UsageError("unknown sort");
}

Ast RandomAst::prop(int depth) {
  if (leaf(depth)) return pick(4) == 0 ? ast::tt() : ast::atom(letter());
  if (pick(2) == 0) return ast::neg(prop(depth - 1));
  return ast::conj(prop(depth - 1), prop(depth - 1));
}

Ast RandomAst::ldl(int depth) {
  if (leaf(depth)) return pick(4) == 0 ? ast::tt() : ast::atom(letter());
  switch (pick(3)) {
    case 0: return ast::neg(ldl(depth - 1));
    case 1: return ast::conj(ldl(depth - 1), ldl(depth - 1));
    default: return ast::diamond(ldl_path(depth - 1), ldl(depth - 1));
  }
}

Ast RandomAst::ldl_path(int depth) {
  if (leaf(depth)) return pick(4) == 0 ? ast::test(ldl(0)) : ast::step(prop(1));
  switch (pick(4)) {
    case 0: return ast::test(ldl(depth - 1));
    case 1: return ast::choice(ldl_path(depth - 1), ldl_path(depth - 1));
    case 2: return ast::seq(ldl_path(depth - 1), ldl_path(depth - 1));
    default: return ast::iter(ldl_path(depth - 1));
  }
}

Ast RandomAst::ldlo(int depth) {
  if (leaf(depth)) return pick(4) == 0 ? ast::tt() : ast::atom(letter());
  switch (pick(4)) {
    case 0:
      if (negation_light_) return ast::neg(ast::atom(letter()));
      return ast::neg(ldlo(depth - 1));
    case 1: return ast::conj(ldlo(depth - 1), ldlo(depth - 1));
    case 2: return ast::diamond(ast::omega_iter(ldl_path(depth - 1)), ast::tt());
    default: return ast::diamond(ldlo_path(depth - 1), ldlo(depth - 1));
  }
}

Ast RandomAst::ldlo_path(int depth) {
  if (leaf(depth)) return ast::step(prop(1));
  switch (pick(3)) {
    case 0: return ast::test(ldlo(depth - 1));
    case 1: return ast::choice(ldlo_path(depth - 1), ldlo_path(depth - 1));
    default: return ast::seq(ldl_path(depth - 1), ldlo_path(depth - 1));
  }
}

Ast RandomAst::wldl(int depth) {
  if (leaf(depth)) {
    switch (pick(3)) {
      case 0: return ast::constant(weight());
      case 1: return ast::embed(ldl(1));
      default: return ast::otimes(ast::constant(weight()), ast::embed(ast::atom(letter())));
    }
  }
  switch (pick(3)) {
    case 0: return ast::oplus(wldl(depth - 1), wldl(depth - 1));
    case 1: return ast::otimes(wldl(depth - 1), wldl(depth - 1));
    default: return ast::diamond(wpath(depth - 1), wldl(depth - 1));
  }
}

Ast RandomAst::wpath(int depth) {
  if (leaf(depth)) return pick(3) == 0 ? ast::test(wldl(0)) : ast::step(prop(1));
  switch (pick(4)) {
    case 0: return ast::test(wldl(depth - 1));
    case 1: return ast::choice(wpath(depth - 1), wpath(depth - 1));
    case 2: return ast::seq(wpath(depth - 1), wpath(depth - 1));
    default: return ast::iter(proper_wpath(depth - 1));
  }
}

Ast RandomAst::proper_wpath(int depth) {
  for (int i = 0; i < kMaxResample; ++i) {
    Ast rho = wpath(depth);
    if (is_proper_path(rho, semiring_)) return rho;
  }
  return ast::step(ast::tt());
}

Ast RandomAst::wldlo(int depth) {
  if (leaf(depth)) {
    if (pick(2) == 0) return ast::constant(weight());
    return ast::embed(ldlo(1));
  }
  switch (pick(4)) {
    case 0: return ast::oplus(wldlo(depth - 1), wldlo(depth - 1));
    case 1: return ast::otimes(wldlo(depth - 1), wldlo(depth - 1));
    case 2: return ast::diamond(ast::omega_iter(proper_wpath(depth - 1)), ast::weighted_true());
    default: return ast::diamond(wpatho(depth - 1), wldlo(depth - 1));
  }
}

Ast RandomAst::wpatho(int depth) {
  if (leaf(depth)) return ast::step(prop(1));
  switch (pick(3)) {
    case 0: return ast::test(wldlo(depth - 1));
    case 1: return ast::choice(wpatho(depth - 1), wpatho(depth - 1));
    default: return ast::seq(wpath(depth - 1), wpatho(depth - 1));
  }
}

Ast RandomAst::gre(int depth) {
  if (leaf(depth)) {
    if (pick(4) == 0) return ast::eps(weight());
    return ast::letter(weight(), letter());
  }
  switch (pick(4)) {
    case 0: return ast::sum(gre(depth - 1), gre(depth - 1));
    case 1: return ast::cauchy(gre(depth - 1), gre(depth - 1));
    case 2: return ast::hadamard(gre(depth - 1), gre(depth - 1));
    default: return ast::plus(proper_gre(depth - 1));
  }
}

Ast RandomAst::proper_gre(int depth) {
  for (int i = 0; i < kMaxResample; ++i) {
    Ast e = gre(depth);
    if (eval_gre(e, "", semiring_).is_zero()) return e;
  }
  return ast::letter(semiring_.one(), letter());
}

Ast RandomAst::greo(int depth) {
  if (leaf(depth)) return ast::omega(proper_gre(1));
  switch (pick(4)) {
    case 0: return ast::sum(greo(depth - 1), greo(depth - 1));
    case 1: return ast::hadamard(greo(depth - 1), greo(depth - 1));
    case 2: return ast::cauchy(gre(depth - 1), greo(depth - 1));
    default: return ast::omega(proper_gre(depth - 1));
  }
}

Ast RandomAst::ltl(int depth) {
  if (leaf(depth)) return pick(4) == 0 ? ast::tt() : ast::atom(letter());
  switch (pick(4)) {
    case 0: return ast::neg(ltl(depth - 1));
    case 1: return ast::disj(ltl(depth - 1), ltl(depth - 1));
    case 2: return ast::next(ltl(depth - 1));
    default: return ast::until(ltl(depth - 1), ltl(depth - 1));
  }
}

Ast RandomAst::wltl(int depth) {
  if (leaf(depth)) return pick(2) == 0 ? ast::constant(weight()) : ast::embed(ltl(1));
  switch (pick(5)) {
    case 0: return ast::oplus(wltl(depth - 1), wltl(depth - 1));
    case 1: return ast::otimes(wltl(depth - 1), wltl(depth - 1));
    case 2: return ast::next(wltl(depth - 1));
    case 3: return ast::until(wltl(depth - 1), wltl(depth - 1));
    default: return ast::box_times(wltl(depth - 1));
  }
}

std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_length) {
  std::vector<Word> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char c : alphabet.letters()) out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

}  // namespace wldl
