#include "ff/poly_text.hpp"

#include <cctype>
#include <stdexcept>

namespace ff {
namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(i) + ": " +
                                what + " in '" + s + "'");
  }
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string read_number(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() &&
         (std::isdigit(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '.'))
    ++c.i;
  if (c.i == start) c.fail("expected number");
  return c.s.substr(start, c.i - start);
}

Rational read_coefficient(Cursor& c) {
  std::string num = read_number(c);
  if (c.peek() == '/') {
    ++c.i;
    std::string den = read_number(c);
    if (num.find('.') != std::string::npos || den.find('.') != std::string::npos)
      c.fail("decimal point not allowed in a fraction");
    return Rational::from_string(num + "/" + den);
  }
  return Rational::from_string(num);
}

uint32_t read_exponent(Cursor& c) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
  if (c.i == start) c.fail("expected exponent");
  unsigned long v = std::stoul(c.s.substr(start, c.i - start));
  return static_cast<uint32_t>(v);
}

int read_variable(Cursor& c, std::span<const std::string> names) {
  c.skip_ws();
  size_t start = c.i;
  while (c.i < c.s.size() && ident_char(c.s[c.i])) ++c.i;
  std::string name = c.s.substr(start, c.i - start);
  if (name.empty()) c.fail("expected variable name");
  for (size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<int>(k);
  std::string known;
  for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("polynomial parse error: unknown variable '" + name +
                              "' (known: " + known + ")");
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, std::span<const std::string> names) {
  Cursor c{text};
  int dim = static_cast<int>(names.size());
  Polynomial p(dim);
  if (c.done()) throw std::invalid_argument("polynomial parse error: empty input");
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
      sign = (ch == '-') ? -1 : 1;
      ++c.i;
    } else if (!first) {
      c.fail("expected '+' or '-' between terms");
    }
    first = false;

    Rational coeff(1);
    Exponents exps(dim, 0);
    bool saw_factor = false;

    ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      coeff = read_coefficient(c);
      saw_factor = true;
      if (c.peek() == '*') {
        ++c.i;
      } else if (std::isalpha(static_cast<unsigned char>(c.peek())) || c.peek() == '_') {
        c.fail("expected '*' between coefficient and variable");
      } else {
        p.add_term(exps, sign < 0 ? -coeff : coeff);
        continue;
      }
    }

    while (true) {
      int var = read_variable(c, names);
      uint32_t e = 1;
      if (c.peek() == '^') {
        ++c.i;
        e = read_exponent(c);
      }
      exps[var] += e;
      saw_factor = true;
      if (c.peek() == '*') {
        ++c.i;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
          coeff *= read_coefficient(c);
          if (c.peek() == '*') {
            ++c.i;
            continue;
          }
          break;
        }
        continue;
      }
      break;
    }
    if (!saw_factor) c.fail("empty term");
    p.add_term(exps, sign < 0 ? -coeff : coeff);
  }
  return p;
}

}  // namespace ff
