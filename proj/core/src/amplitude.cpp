#include "q1ca/amplitude.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>

namespace q1ca {

ParseError::ParseError(const std::string& msg, int line_, int column_)
    : Error(line_ > 0 ? msg + " (line " + std::to_string(line_) + ", column " +
                            std::to_string(column_) + ")"
            : column_ > 0 ? msg + " (column " + std::to_string(column_) + ")"
                          : msg),
      line(line_),
      column(column_),
      raw(msg) {}

Amplitude unit_root(long long k, long long n) {
  if (n <= 0) throw ParseError("omega modulus must be positive");
  long long r = k % n;
  if (r < 0) r += n;
  // Quarter turns come out exact so that real machines stay real.
  if (4 * r == 0) return {1.0, 0.0};
  if (4 * r == n) return {0.0, 1.0};
  if (4 * r == 2 * n) return {-1.0, 0.0};
  if (4 * r == 3 * n) return {0.0, -1.0};
  double angle = 2.0 * std::numbers::pi * static_cast<double>(r) /
                 static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  bool consume(std::string_view word) {
    if (text.substr(pos, word.size()) != word) return false;
    pos += word.size();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 0, static_cast<int>(pos) + 1);
  }
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

long long parse_int(Cursor& c) {
  if (!is_digit(c.peek())) c.fail("expected integer");
  std::size_t start = c.pos;
  while (is_digit(c.peek())) ++c.pos;
  return std::strtoll(std::string(c.text.substr(start, c.pos - start)).c_str(),
                      nullptr, 10);
}

double parse_decimal(Cursor& c) {
  std::string tail(c.text.substr(c.pos));
  const char* begin = tail.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin) c.fail("expected number");
  c.pos += static_cast<std::size_t>(end - begin);
  return value;
}

double parse_rational(Cursor& c) {
  long long num = parse_int(c);
  if (c.consume('/')) {
    std::size_t at = c.pos;
    long long den = parse_int(c);
    if (den == 0) throw ParseError("zero denominator", 0, static_cast<int>(at) + 1);
    return static_cast<double>(num) / static_cast<double>(den);
  }
  return static_cast<double>(num);
}

double parse_signed_coef(Cursor& c) {
  double sign = 1.0;
  if (c.consume('-')) sign = -1.0;
  if (c.consume("sqrt(")) {
    std::size_t at = c.pos;
    double r = parse_rational(c);
    if (r < 0) throw ParseError("sqrt of negative value", 0, static_cast<int>(at) + 1);
    if (!c.consume(')')) c.fail("expected ')'");
    return sign * std::sqrt(r);
  }
  if (!is_digit(c.peek())) c.fail("expected coefficient");

  // Look ahead past the integer part to tell int forms from decimals.
  std::size_t start = c.pos;
  while (is_digit(c.peek())) ++c.pos;
  char next = c.peek();
  if (next == '.' || next == 'e' || next == 'E') {
    c.pos = start;
    return sign * parse_decimal(c);
  }
  long long num = std::strtoll(
      std::string(c.text.substr(start, c.pos - start)).c_str(), nullptr, 10);
  if (c.consume('/')) {
    if (c.consume("sqrt(")) {
      std::size_t at = c.pos;
      long long den = parse_int(c);
      if (den <= 0)
        throw ParseError("sqrt argument must be positive", 0,
                         static_cast<int>(at) + 1);
      if (!c.consume(')')) c.fail("expected ')'");
      return sign * static_cast<double>(num) / std::sqrt(static_cast<double>(den));
    }
    std::size_t at = c.pos;
    long long den = parse_int(c);
    if (den == 0) throw ParseError("zero denominator", 0, static_cast<int>(at) + 1);
    return sign * static_cast<double>(num) / static_cast<double>(den);
  }
  return sign * static_cast<double>(num);
}

Amplitude parse_phase(Cursor& c) {
  if (!c.consume("omega(")) c.fail("expected omega(");
  long long k = parse_int(c);
  if (!c.consume(',')) c.fail("expected ','");
  std::size_t at = c.pos;
  long long n = parse_int(c);
  if (!c.consume(')')) c.fail("expected ')'");
  if (n <= 0) throw ParseError("omega modulus must be positive", 0,
                               static_cast<int>(at) + 1);
  return unit_root(k, n);
}

Amplitude parse_complex_literal(Cursor& c) {
  if (!c.consume('(')) c.fail("expected '('");
  double re = parse_decimal(c);
  if (!c.consume(',')) c.fail("expected ','");
  double im = parse_decimal(c);
  if (!c.consume(')')) c.fail("expected ')'");
  return {re, im};
}

}  // namespace

Amplitude parse_amplitude(std::string_view token) {
  Cursor c{token};
  if (c.done()) c.fail("empty amplitude");
  Amplitude value;
  if (c.peek() == '(') {
    value = parse_complex_literal(c);
  } else if (c.text.substr(c.pos, 6) == "omega(") {
    value = parse_phase(c);
  } else {
    double coef = parse_signed_coef(c);
    value = {coef, 0.0};
    if (c.consume('*')) value = coef * parse_phase(c);
  }
  if (!c.done()) c.fail("trailing characters in amplitude");
  return value;
}

double parse_probability(std::string_view token) {
  Amplitude a = parse_amplitude(token);
  if (a.imag() != 0.0) throw ParseError("probability must be real");
  if (a.real() < 0.0) throw ParseError("probability must be nonnegative");
  return a.real();
}

std::string format_amplitude(const Amplitude& a) {
  char buf[64];
  if (a.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", a.real());
    return buf;
  }
  std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", a.real(), a.imag());
  return buf;
}

std::string format_probability(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return buf;
}

}  // namespace q1ca
