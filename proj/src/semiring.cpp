#include "wldl/semiring.hpp"

#include <algorithm>
#include <cctype>

#include "wldl/error.hpp"

namespace wldl {

namespace {

constexpr std::array<std::string_view, 7> kNames = {"boolean", "nat", "int", "rat",
                                                    "minplus", "maxplus", "viterbi"};

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void require_same(const Weight& a, const Weight& b) {
  if (a.semiring() != b.semiring()) {
    throw UsageError("mixed-semiring arguments: " + std::string(a.semiring().name()) + " and " +
                     std::string(b.semiring().name()));
  }
}

}  // namespace

Semiring Semiring::from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return Semiring(static_cast<SemiringKind>(i));
  }
  throw UsageError("unknown semiring '" + std::string(name) +
                   "' (expected boolean|nat|int|rat|minplus|maxplus|viterbi)");
}

const std::array<Semiring, 7>& Semiring::all() {
  static const std::array<Semiring, 7> instances = {
      Semiring(SemiringKind::Boolean), Semiring(SemiringKind::Nat),     Semiring(SemiringKind::Int),
      Semiring(SemiringKind::Rat),     Semiring(SemiringKind::MinPlus), Semiring(SemiringKind::MaxPlus),
      Semiring(SemiringKind::Viterbi)};
  return instances;
}

std::string_view Semiring::name() const { return kNames[static_cast<std::size_t>(kind_)]; }

Weight Semiring::zero() const {
  switch (kind_) {
    case SemiringKind::MinPlus:
    case SemiringKind::MaxPlus:
      return Weight(kind_, 0, true);
    default:
      return Weight(kind_, 0, false);
  }
}

Weight Semiring::one() const {
  switch (kind_) {
    case SemiringKind::MinPlus:
    case SemiringKind::MaxPlus:
      return Weight(kind_, 0, false);
    default:
      return Weight(kind_, 1, false);
  }
}

Weight Semiring::from_int(long value) const { return parse(std::to_string(value)); }

Weight Semiring::parse(std::string_view literal) const {
  auto invalid = [&](const char* why) {
    return UsageError("weight literal '" + std::string(literal) + "' invalid for " + std::string(name()) +
                      ": " + why);
  };
  if (literal == "inf" || literal == "-inf") {
    if (kind_ == SemiringKind::MinPlus && literal == "inf") return zero();
    if (kind_ == SemiringKind::MaxPlus && literal == "-inf") return zero();
    throw invalid("no such infinite element");
  }
  mpq_class q;
  const auto slash = literal.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(literal)) throw invalid("not a number");
    q = mpq_class(mpz_class(std::string(literal)));
  } else {
    const auto num = literal.substr(0, slash);
    const auto den = literal.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-') throw invalid("not a fraction");
    mpz_class d(std::string{den});
    if (d == 0) throw invalid("zero denominator");
    q = mpq_class(mpz_class(std::string(num)), d);
    q.canonicalize();
  }
  const bool integral = q.get_den() == 1;
  switch (kind_) {
    case SemiringKind::Boolean:
      if (q != 0 && q != 1) throw invalid("boolean weights are 0 or 1");
      break;
    case SemiringKind::Nat:
    case SemiringKind::MinPlus:
    case SemiringKind::MaxPlus:
      if (!integral || q < 0) throw invalid("expected a natural number");
      break;
    case SemiringKind::Int:
      if (!integral) throw invalid("expected an integer");
      break;
    case SemiringKind::Rat:
      break;
    case SemiringKind::Viterbi:
      if (q < 0 || q > 1) throw invalid("viterbi weights lie in [0,1]");
      break;
  }
  return Weight(kind_, q, false);
}

bool Weight::is_zero() const { return *this == semiring().zero(); }
bool Weight::is_one() const { return *this == semiring().one(); }

std::string Weight::to_string() const {
  if (infinite_) return kind_ == SemiringKind::MaxPlus ? "-inf" : "inf";
  return value_.get_str();
}

Weight Weight::inverse() const {
  if (!semiring().field()) throw UsageError("inverse requires a field, got " + std::string(semiring().name()));
  if (value_ == 0) throw UsageError("inverse of zero");
  return Weight(kind_, 1 / value_, false);
}

Weight Weight::negate() const {
  if (kind_ != SemiringKind::Rat && kind_ != SemiringKind::Int) {
    throw UsageError("negation requires a ring, got " + std::string(semiring().name()));
  }
  return Weight(kind_, -value_, false);
}

bool Weight::precedes(const Weight& other) const { return *this + other == *this; }

Weight operator+(const Weight& a, const Weight& b) {
  require_same(a, b);
  switch (a.kind_) {
    case SemiringKind::Boolean:
      return Weight(a.kind_, (a.value_ != 0 || b.value_ != 0) ? 1 : 0, false);
    case SemiringKind::Nat:
    case SemiringKind::Int:
    case SemiringKind::Rat:
      return Weight(a.kind_, a.value_ + b.value_, false);
    case SemiringKind::MinPlus:
      if (a.infinite_) return b;
      if (b.infinite_) return a;
      return a.value_ <= b.value_ ? a : b;
    case SemiringKind::MaxPlus:
      if (a.infinite_) return b;
      if (b.infinite_) return a;
      return a.value_ >= b.value_ ? a : b;
    case SemiringKind::Viterbi:
      return a.value_ >= b.value_ ? a : b;
  }
  return a;
}

Weight operator*(const Weight& a, const Weight& b) {
  require_same(a, b);
  switch (a.kind_) {
    case SemiringKind::Boolean:
      return Weight(a.kind_, (a.value_ != 0 && b.value_ != 0) ? 1 : 0, false);
    case SemiringKind::Nat:
    case SemiringKind::Int:
    case SemiringKind::Rat:
    case SemiringKind::Viterbi:
      return Weight(a.kind_, a.value_ * b.value_, false);
    case SemiringKind::MinPlus:
    case SemiringKind::MaxPlus:
      if (a.infinite_) return a;
      if (b.infinite_) return b;
      return Weight(a.kind_, a.value_ + b.value_, false);
  }
  return a;
}

std::size_t Weight::hash() const {
  if (infinite_) return static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL + 1;
  std::size_t h = std::hash<std::string>{}(value_.get_str());
  return h ^ (static_cast<std::size_t>(kind_) << 1);
}

}  // namespace wldl
