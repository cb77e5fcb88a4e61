#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "q1ca/types.hpp"

namespace q1ca {

/// One transition entry: destination state, counter increment, head move
/// (oneq1ca only), register symbol written (quantum kinds only), amplitude.
struct Target {
  int state = 0;
  int increment = 0;  // -1, 0, +1
  HeadMove move = HeadMove::right;
  int reg = -1;
  Amplitude amplitude{};
};

/// A one-counter automaton over tape alphabet Sigma + {cent, dollar}.
///
/// Tape symbols are indexed 0..|Sigma|-1 for input symbols, then cent(),
/// then dollar(). Transitions are keyed by (state, tape symbol, counter
/// sign); each key owns a list of targets. Machines are immutable once
/// built; every operation takes them by const reference.
struct Machine {
  MachineKind kind = MachineKind::rtp1ca;
  CounterMode counter_mode = CounterMode::checked;
  bool simple = false;

  std::vector<std::string> states;           // states[0] is initial
  std::vector<std::string> input_alphabet;   // Sigma
  std::vector<std::string> register_alphabet;  // empty for rtp1ca
  int initial_register = -1;

  std::set<int> accept_states;     // rtp1ca acceptance
  std::set<int> accept_registers;  // quantum acceptance
  std::set<int> reject_registers;  // kq1ca / oneq1ca halting rejection

  /// Counter increment forced per (destination state, tape symbol) when
  /// simple is set. Indexed state * tape_symbol_count() + symbol;
  /// kNoIncrement marks unset entries.
  std::vector<int> dc;
  static constexpr int kNoIncrement = INT32_MIN;

  int cent() const { return static_cast<int>(input_alphabet.size()); }
  int dollar() const { return cent() + 1; }
  int tape_symbol_count() const { return cent() + 2; }
  int state_count() const { return static_cast<int>(states.size()); }
  int register_count() const { return static_cast<int>(register_alphabet.size()); }
  bool is_quantum() const { return kind != MachineKind::rtp1ca; }

  std::string tape_symbol_name(int sym) const;

  /// -1 when absent.
  int state_index(std::string_view name) const;
  int input_index(std::string_view name) const;
  int register_index(std::string_view name) const;

  const std::vector<Target>& targets(int state, int sym, CounterSign s) const;
  void add_target(int state, int sym, CounterSign s, const Target& t);
  /// Adds the same target under all three counter signs.
  void add_target_all_signs(int state, int sym, const Target& t);

  int dc_increment(int state, int sym) const;
  void set_dc(int state, int sym, int increment);

  /// Grows the transition table to match states/alphabet sizes. Builders
  /// call this once after declaring states and alphabets, before adding
  /// targets.
  void reserve_tables();

  /// Throws Error on structural defects: bad indices, duplicate or empty
  /// identifiers, register sets inconsistent with the kind, increments
  /// outside {-1,0,+1}, simple machines with incomplete dc or targets
  /// disagreeing with it, non-real rtp1ca amplitudes, kq1ca register
  /// alphabets that are not a neutral/accept/reject singleton partition.
  void check_structure() const;

 private:
  std::vector<std::vector<Target>> transitions_;
  int slot(int state, int sym, CounterSign s) const;
};

/// Maps w to tape symbol indices cent, w..., dollar.
/// Throws AlphabetError on a symbol outside Sigma. When every input symbol
/// is a single character the string is read per character; otherwise it is
/// split on whitespace.
std::vector<int> tape_string(const Machine& m, std::string_view w);

/// Copy with the simple flag dropped (dc cleared, transitions untouched),
/// so that general-form validators apply.
Machine as_general(const Machine& m);

}  // namespace q1ca
