#pragma once

#include <string>
#include <string_view>

#include "q1ca/types.hpp"

namespace q1ca {

/// e^(2*pi*i*k/n). Quarter turns (k/n = 0, 1/4, 1/2, 3/4) are exact.
/// Throws ParseError if n <= 0.
Amplitude unit_root(long long k, long long n);

/// Parses one amplitude token:
///   amplitude      := signedCoef | signedCoef "*" phase | phase | complexLiteral
///   signedCoef     := ["-"] (int | int "/" int | "sqrt(" rational ")"
///                      | int "/sqrt(" int ")" | decimal)
///   phase          := "omega(" int "," int ")"
///   complexLiteral := "(" decimal "," decimal ")"
/// Throws ParseError with a 1-based column on bad syntax, zero denominators,
/// or omega modulus <= 0.
Amplitude parse_amplitude(std::string_view token);

/// Like parse_amplitude but requires the value to be a real in [0, 1]
/// (tolerance on the upper bound is the caller's concern; negative or
/// complex values are rejected here).
double parse_probability(std::string_view token);

/// Round-trip rendering: real values as a bare decimal, others as a
/// complexLiteral "(re,im)". 17 significant digits, always reparseable.
std::string format_amplitude(const Amplitude& a);

/// "%.12g" rendering used for all human-facing probabilities.
std::string format_probability(double p);

}  // namespace q1ca
