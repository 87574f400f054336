#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace graphlift {

/// Integer polynomial in the single variable d, parsed from text such as
/// "d*(d-1)" or "d^2 - d". Grammar:
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | base ('^' digits)?
///   base   := 'd' | digits | '(' expr ')'
/// Evaluation is exact 64-bit integer arithmetic; overflow throws
/// std::overflow_error, malformed text throws std::invalid_argument.
class DegreeExpr {
 public:
  static DegreeExpr parse(std::string_view text);

  std::int64_t operator()(std::int64_t d) const;
  const std::string& text() const noexcept { return text_; }

 private:
  enum class Op : std::uint8_t { push_const, push_d, add, sub, mul, neg, pow };
  struct Instr {
    Op op;
    std::int64_t arg;
  };
  std::vector<Instr> code_;
  std::string text_;
};

}  // namespace graphlift
