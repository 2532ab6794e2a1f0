#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace wldl {

enum class SemiringKind { Boolean, Nat, Int, Rat, MinPlus, MaxPlus, Viterbi };

class Weight;

/// Descriptor of one of the shipped semiring instances.
///
/// | name    | carrier          | +   | *   | 0     | 1 |
/// |---------|------------------|-----|-----|-------|---|
/// | boolean | {0,1}            | or  | and | 0     | 1 |
/// | nat     | N                | +   | *   | 0     | 1 |
/// | int     | Z                | +   | *   | 0     | 1 |
/// | rat     | Q                | +   | *   | 0     | 1 |
/// | minplus | N u {inf}        | min | +   | inf   | 0 |
/// | maxplus | N u {-inf}       | max | +   | -inf  | 0 |
/// | viterbi | Q n [0,1]        | max | *   | 0     | 1 |
class Semiring {
 public:
  constexpr explicit Semiring(SemiringKind kind = SemiringKind::Boolean) : kind_(kind) {}

  /// Looks up a semiring by its CLI name; throws UsageError when unknown.
  static Semiring from_name(std::string_view name);
  static const std::array<Semiring, 7>& all();

  constexpr SemiringKind kind() const { return kind_; }
  std::string_view name() const;

  // Every shipped instance is commutative.
  constexpr bool commutative() const { return true; }
  constexpr bool idempotent() const {
    return kind_ == SemiringKind::Boolean || kind_ == SemiringKind::MinPlus ||
           kind_ == SemiringKind::MaxPlus || kind_ == SemiringKind::Viterbi;
  }
  constexpr bool field() const { return kind_ == SemiringKind::Rat; }
  constexpr bool lasso_omega_supported() const {
    return kind_ == SemiringKind::Boolean || kind_ == SemiringKind::MinPlus;
  }

  Weight zero() const;
  Weight one() const;

  /// Parses a weight literal (`-?[0-9]+`, `p/q`, `inf`, `-inf`) and checks that
  /// it belongs to the carrier. Throws UsageError on invalid literals.
  Weight parse(std::string_view literal) const;

  /// Builds a weight from an integer, checking carrier membership.
  Weight from_int(long value) const;

  friend constexpr bool operator==(Semiring, Semiring) = default;

 private:
  SemiringKind kind_;
};

/// An immutable exact semiring element.
class Weight {
 public:
  /// Boolean zero; exists so that Weight can live in standard containers.
  Weight() = default;

  Semiring semiring() const { return Semiring(kind_); }

  /// True for the infinite element of minplus (+inf) and maxplus (-inf).
  bool infinite() const { return infinite_; }
  const mpq_class& value() const { return value_; }

  bool is_zero() const;
  bool is_one() const;

  /// Canonical literal: reduced fractions, `inf` / `-inf`.
  std::string to_string() const;

  /// Multiplicative inverse; field semirings only, nonzero argument.
  Weight inverse() const;
  /// Additive inverse; rat and int only.
  Weight negate() const;

  /// Natural order of an idempotent semiring: a <= b iff a + b == a.
  /// For minplus this is the numeric order, for boolean 1 <= 0.
  bool precedes(const Weight& other) const;

  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator*(const Weight& a, const Weight& b);
  Weight& operator+=(const Weight& b) { return *this = *this + b; }
  Weight& operator*=(const Weight& b) { return *this = *this * b; }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.kind_ == b.kind_ && a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  friend class Semiring;
  Weight(SemiringKind kind, mpq_class value, bool infinite)
      : kind_(kind), infinite_(infinite), value_(std::move(value)) {
    value_.canonicalize();
  }

  SemiringKind kind_ = SemiringKind::Boolean;
  bool infinite_ = false;
  mpq_class value_ = 0;
};

inline Weight add(const Weight& a, const Weight& b) { return a + b; }
inline Weight mul(const Weight& a, const Weight& b) { return a * b; }
inline Weight zero(Semiring s) { return s.zero(); }
inline Weight one(Semiring s) { return s.one(); }

/// Weight of a truth value: one() or zero().
inline Weight indicator(Semiring s, bool b) { return b ? s.one() : s.zero(); }

}  // namespace wldl

template <>
struct std::hash<wldl::Weight> {
  std::size_t operator()(const wldl::Weight& w) const { return w.hash(); }
};
