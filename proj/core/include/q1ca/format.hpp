#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "q1ca/machine.hpp"

namespace q1ca {

/// Parses the line-oriented machine description format:
///
///   # comment
///   kind rtp1ca|rtq1ca|kq1ca|1q1ca
///   counter checked|blind
///   simple true|false
///   states <id>...            (first is initial)
///   input <sym>...
///   register <id>...          (quantum kinds)
///   init-register <id>
///   accept <id>...            (states for rtp1ca, registers otherwise)
///   reject <id>...            (registers)
///   dc <state> <tapesym|*> <-1|0|+1>        (simple machines)
///   trans <q> <sym> <sign> -> <q'> <inc> [stay|right] <reg> : <amplitude>
///   auto-complete unitary
///
/// <sym> is an input symbol, CENT, or DOLLAR; <sign> is zero|plus|minus|any
/// (any = all three). The head-move token appears exactly for kind 1q1ca;
/// the register token is omitted for rtp1ca. Every identifier must be
/// declared before use, and `kind` must precede any line that depends on
/// it. The trailing directive completes missing columns via
/// complete_machine; without it they are left for the validators to flag.
///
/// Throws ParseError (with 1-based line/column) on malformed input and
/// Error on structural defects.
Machine parse_machine(std::string_view text);
Machine parse_machine_file(const std::string& path);

/// Canonical rendering; parse_machine(serialize_machine(m)) reproduces m
/// exactly (amplitudes are emitted with 17 significant digits). Blind
/// machines collapse their three sign rows into `any` lines.
std::string serialize_machine(const Machine& m);

}  // namespace q1ca
