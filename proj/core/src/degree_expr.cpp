#include "graphlift/degree_expr.hpp"

#include <cctype>
#include <stdexcept>

namespace graphlift {

namespace {

[[noreturn]] void fail(std::string_view text, std::size_t pos, const char* what) {
  throw std::invalid_argument("bad degree expression '" + std::string(text) +
                              "' at position " + std::to_string(pos) + ": " + what);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("degree weight overflow");
  return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("degree weight overflow");
  return r;
}
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("degree weight overflow");
  return r;
}

}  // namespace

DegreeExpr DegreeExpr::parse(std::string_view text) {
  DegreeExpr expr;
  expr.text_.assign(text);
  std::size_t pos = 0;

  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto peek = [&]() -> int {
    skip_ws();
    return pos < text.size() ? static_cast<unsigned char>(text[pos]) : -1;
  };

  // Recursive descent emitting stack-machine code.
  auto parse_expr = [&](auto&& self_expr) -> void {
    auto parse_base = [&] {
      const int c = peek();
      if (c == 'd') {
        ++pos;
        expr.code_.push_back({Op::push_d, 0});
      } else if (c >= '0' && c <= '9') {
        std::int64_t value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          value = checked_mul(value, 10);
          value = checked_add(value, text[pos] - '0');
          ++pos;
        }
        expr.code_.push_back({Op::push_const, value});
      } else if (c == '(') {
        ++pos;
        self_expr(self_expr);
        if (peek() != ')') fail(text, pos, "expected ')'");
        ++pos;
      } else {
        fail(text, pos, "expected 'd', a number, or '('");
      }
    };
    auto parse_factor = [&](auto&& self_factor) -> void {
      if (peek() == '-') {
        ++pos;
        self_factor(self_factor);
        expr.code_.push_back({Op::neg, 0});
        return;
      }
      parse_base();
      if (peek() == '^') {
        ++pos;
        const int c = peek();
        if (c < '0' || c > '9') fail(text, pos, "expected integer exponent");
        std::int64_t e = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          e = e * 10 + (text[pos] - '0');
          if (e > 62) fail(text, pos, "exponent too large");
          ++pos;
        }
        expr.code_.push_back({Op::pow, e});
      }
    };
    auto parse_term = [&] {
      parse_factor(parse_factor);
      while (peek() == '*') {
        ++pos;
        parse_factor(parse_factor);
        expr.code_.push_back({Op::mul, 0});
      }
    };
    parse_term();
    while (true) {
      const int c = peek();
      if (c == '+') {
        ++pos;
        parse_term();
        expr.code_.push_back({Op::add, 0});
      } else if (c == '-') {
        ++pos;
        parse_term();
        expr.code_.push_back({Op::sub, 0});
      } else {
        break;
      }
    }
  };

  parse_expr(parse_expr);
  skip_ws();
  if (pos != text.size()) fail(text, pos, "trailing input");
  return expr;
}

std::int64_t DegreeExpr::operator()(std::int64_t d) const {
  std::int64_t stack[32];
  int top = 0;
  for (const Instr& instr : code_) {
    switch (instr.op) {
      case Op::push_const:
        stack[top++] = instr.arg;
        break;
      case Op::push_d:
        stack[top++] = d;
        break;
      case Op::add:
        --top;
        stack[top - 1] = checked_add(stack[top - 1], stack[top]);
        break;
      case Op::sub:
        --top;
        stack[top - 1] = checked_sub(stack[top - 1], stack[top]);
        break;
      case Op::mul:
        --top;
        stack[top - 1] = checked_mul(stack[top - 1], stack[top]);
        break;
      case Op::neg:
        stack[top - 1] = checked_sub(0, stack[top - 1]);
        break;
      case Op::pow: {
        std::int64_t base = stack[top - 1];
        std::int64_t result = 1;
        for (std::int64_t i = 0; i < instr.arg; ++i) result = checked_mul(result, base);
        stack[top - 1] = result;
        break;
      }
    }
    if (top > 30) throw std::invalid_argument("degree expression too deep");
  }
  return stack[0];
}

}  // namespace graphlift
