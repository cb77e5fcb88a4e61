#include "q1ca/machine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

namespace q1ca {

std::string_view to_string(CounterSign s) {
  switch (s) {
    case CounterSign::zero: return "zero";
    case CounterSign::plus: return "plus";
    case CounterSign::minus: return "minus";
  }
  return "?";
}

std::string_view to_string(HeadMove d) {
  return d == HeadMove::stay ? "stay" : "right";
}

std::string_view to_string(MachineKind k) {
  switch (k) {
    case MachineKind::rtp1ca: return "rtp1ca";
    case MachineKind::rtq1ca: return "rtq1ca";
    case MachineKind::kq1ca: return "kq1ca";
    case MachineKind::oneq1ca: return "1q1ca";
  }
  return "?";
}

std::string_view to_string(CounterMode m) {
  return m == CounterMode::checked ? "checked" : "blind";
}

std::optional<CounterSign> counter_sign_from(std::string_view token) {
  if (token == "zero") return CounterSign::zero;
  if (token == "plus") return CounterSign::plus;
  if (token == "minus") return CounterSign::minus;
  return std::nullopt;
}

std::optional<MachineKind> machine_kind_from(std::string_view token) {
  if (token == "rtp1ca") return MachineKind::rtp1ca;
  if (token == "rtq1ca") return MachineKind::rtq1ca;
  if (token == "kq1ca") return MachineKind::kq1ca;
  if (token == "1q1ca") return MachineKind::oneq1ca;
  return std::nullopt;
}

std::optional<CounterMode> counter_mode_from(std::string_view token) {
  if (token == "checked") return CounterMode::checked;
  if (token == "blind") return CounterMode::blind;
  return std::nullopt;
}

std::string Machine::tape_symbol_name(int sym) const {
  if (sym >= 0 && sym < cent()) return input_alphabet[sym];
  if (sym == cent()) return "CENT";
  if (sym == dollar()) return "DOLLAR";
  return "?";
}

namespace {
int find_token(const std::vector<std::string>& list, std::string_view name) {
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i] == name) return static_cast<int>(i);
  return -1;
}
}  // namespace

int Machine::state_index(std::string_view name) const {
  return find_token(states, name);
}
int Machine::input_index(std::string_view name) const {
  return find_token(input_alphabet, name);
}
int Machine::register_index(std::string_view name) const {
  return find_token(register_alphabet, name);
}

int Machine::slot(int state, int sym, CounterSign s) const {
  return (state * tape_symbol_count() + sym) * 3 + static_cast<int>(s);
}

const std::vector<Target>& Machine::targets(int state, int sym,
                                            CounterSign s) const {
  return transitions_[slot(state, sym, s)];
}

void Machine::add_target(int state, int sym, CounterSign s, const Target& t) {
  transitions_[slot(state, sym, s)].push_back(t);
}

void Machine::add_target_all_signs(int state, int sym, const Target& t) {
  add_target(state, sym, CounterSign::zero, t);
  add_target(state, sym, CounterSign::plus, t);
  add_target(state, sym, CounterSign::minus, t);
}

int Machine::dc_increment(int state, int sym) const {
  return dc[state * tape_symbol_count() + sym];
}

void Machine::set_dc(int state, int sym, int increment) {
  dc[state * tape_symbol_count() + sym] = increment;
}

void Machine::reserve_tables() {
  transitions_.assign(
      static_cast<std::size_t>(state_count()) * tape_symbol_count() * 3, {});
  if (simple)
    dc.assign(static_cast<std::size_t>(state_count()) * tape_symbol_count(),
              kNoIncrement);
}

namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

void check_unique_tokens(const std::vector<std::string>& list,
                         const char* what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& t : list) {
    require(!t.empty(), std::string(what) + " identifier is empty");
    require(seen.insert(t).second,
            std::string("duplicate ") + what + " identifier '" + t + "'");
  }
}
}  // namespace

void Machine::check_structure() const {
  require(!states.empty(), "machine has no states");
  require(state_count() < (1 << 16), "too many states");
  check_unique_tokens(states, "state");
  check_unique_tokens(input_alphabet, "input");
  check_unique_tokens(register_alphabet, "register");

  if (kind == MachineKind::rtp1ca) {
    require(register_alphabet.empty(), "rtp1ca machines have no registers");
    require(initial_register == -1, "rtp1ca machines have no registers");
    require(accept_registers.empty() && reject_registers.empty(),
            "rtp1ca machines accept by state");
    for (int q : accept_states)
      require(q >= 0 && q < state_count(), "accept state out of range");
  } else {
    require(accept_states.empty(), "quantum machines accept by register");
    require(!register_alphabet.empty(), "register alphabet is empty");
    require(initial_register >= 0 && initial_register < register_count(),
            "initial register out of range");
    for (int r : accept_registers)
      require(r >= 0 && r < register_count(), "accept register out of range");
    for (int r : reject_registers)
      require(r >= 0 && r < register_count(), "reject register out of range");
    for (int r : accept_registers)
      require(!reject_registers.count(r),
              "register '" + register_alphabet[r] + "' both accepts and rejects");
    if (kind == MachineKind::kq1ca) {
      require(register_count() == 3 && accept_registers.size() == 1 &&
                  reject_registers.size() == 1,
              "kq1ca needs registers partitioned into neutral/accept/reject "
              "singletons");
    }
    if (kind == MachineKind::oneq1ca)
      require(!accept_registers.empty() && !reject_registers.empty(),
              "1q1ca needs accept and reject registers");
    if (kind == MachineKind::kq1ca || kind == MachineKind::oneq1ca)
      require(!accept_registers.count(initial_register) &&
                  !reject_registers.count(initial_register),
              "initial register must be neutral");
  }

  require(transitions_.size() ==
              static_cast<std::size_t>(state_count()) * tape_symbol_count() * 3,
          "transition table not sized (call reserve_tables)");

  if (simple) {
    require(dc.size() == static_cast<std::size_t>(state_count()) *
                             tape_symbol_count(),
            "dc table not sized");
    for (int q = 0; q < state_count(); ++q)
      for (int sym = 0; sym < tape_symbol_count(); ++sym) {
        int inc = dc_increment(q, sym);
        require(inc != kNoIncrement,
                "simple machine leaves dc(" + states[q] + ", " +
                    tape_symbol_name(sym) + ") undefined");
        require(inc >= -1 && inc <= 1, "dc increment out of range");
      }
  } else {
    require(dc.empty(), "dc table on a non-simple machine");
  }

  for (int q = 0; q < state_count(); ++q)
    for (int sym = 0; sym < tape_symbol_count(); ++sym)
      for (int si = 0; si < 3; ++si)
        for (const Target& t : targets(q, sym, static_cast<CounterSign>(si))) {
          require(t.state >= 0 && t.state < state_count(),
                  "target state out of range");
          require(t.increment >= -1 && t.increment <= 1,
                  "counter increment out of range");
          require(std::isfinite(t.amplitude.real()) &&
                      std::isfinite(t.amplitude.imag()),
                  "amplitude is not finite");
          if (kind == MachineKind::rtp1ca) {
            require(t.reg == -1, "rtp1ca target names a register");
            require(t.amplitude.imag() == 0.0,
                    "rtp1ca probabilities must be real");
          } else {
            require(t.reg >= 0 && t.reg < register_count(),
                    "target register out of range");
          }
          if (kind != MachineKind::oneq1ca)
            require(t.move == HeadMove::right,
                    "real-time machines always move right");
          if (simple)
            require(t.increment == dc_increment(t.state, sym),
                    "simple machine target disagrees with dc(" +
                        states[t.state] + ", " + tape_symbol_name(sym) + ")");
        }
}

std::vector<int> tape_string(const Machine& m, std::string_view w) {
  bool single_char = true;
  for (const auto& s : m.input_alphabet)
    if (s.size() != 1) single_char = false;

  std::vector<int> tape;
  tape.push_back(m.cent());
  if (single_char) {
    for (char c : w) {
      int sym = m.input_index(std::string_view(&c, 1));
      if (sym < 0)
        throw AlphabetError(std::string("input symbol '") + c +
                            "' is not in the machine alphabet");
      tape.push_back(sym);
    }
  } else {
    std::size_t i = 0;
    while (i < w.size()) {
      while (i < w.size() && std::isspace(static_cast<unsigned char>(w[i]))) ++i;
      std::size_t start = i;
      while (i < w.size() && !std::isspace(static_cast<unsigned char>(w[i]))) ++i;
      if (start == i) break;
      std::string_view token = w.substr(start, i - start);
      int sym = m.input_index(token);
      if (sym < 0)
        throw AlphabetError("input symbol '" + std::string(token) +
                            "' is not in the machine alphabet");
      tape.push_back(sym);
    }
  }
  tape.push_back(m.dollar());
  return tape;
}

Machine as_general(const Machine& m) {
  Machine g = m;
  g.simple = false;
  g.dc.clear();
  return g;
}

}  // namespace q1ca
