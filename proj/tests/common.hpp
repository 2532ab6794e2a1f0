#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "wldl/ast.hpp"
#include "wldl/semiring.hpp"
#include "wldl/syntax.hpp"

namespace wldl {

inline void PrintTo(const Weight& w, std::ostream* os) { *os << w.to_string(); }
inline void PrintTo(Sort s, std::ostream* os) { *os << sort_name(s); }

}  // namespace wldl

namespace testing_support {

inline const wldl::Semiring kBoolean{wldl::SemiringKind::Boolean};
inline const wldl::Semiring kNat{wldl::SemiringKind::Nat};
inline const wldl::Semiring kInt{wldl::SemiringKind::Int};
inline const wldl::Semiring kRat{wldl::SemiringKind::Rat};
inline const wldl::Semiring kMinPlus{wldl::SemiringKind::MinPlus};
inline const wldl::Semiring kMaxPlus{wldl::SemiringKind::MaxPlus};
inline const wldl::Semiring kViterbi{wldl::SemiringKind::Viterbi};

inline wldl::Ast parse(wldl::Sort sort, std::string_view text, wldl::Semiring s = kNat,
                       std::string_view alphabet = "ab") {
  return wldl::parse(sort, text, wldl::Alphabet(alphabet), s);
}

inline wldl::Weight W(wldl::Semiring s, std::string_view literal) { return s.parse(literal); }

}  // namespace testing_support
