#include "q1ca/transform.hpp"

#include <cmath>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "q1ca/types.hpp"

namespace q1ca {

namespace {

const char* increment_suffix(int inc) {
  switch (inc) {
    case -1: return "@-1";
    case 0: return "@0";
    default: return "@+1";
  }
}

std::string fresh_name(std::string base, std::unordered_set<std::string>& used) {
  while (used.count(base)) base += '\'';
  used.insert(base);
  return base;
}

}  // namespace

Machine simplify_rtp1ca(const Machine& m) {
  if (m.kind != MachineKind::rtp1ca)
    throw PreconditionError("simplify_rtp1ca needs an rtp1ca");
  m.check_structure();

  const int n = m.state_count();
  static constexpr int kIncs[3] = {-1, 0, +1};

  Machine out;
  out.kind = MachineKind::rtp1ca;
  out.counter_mode = m.counter_mode;
  out.simple = true;
  out.input_alphabet = m.input_alphabet;

  // Product index of (q, c): the initial (0, 0) comes first, the rest
  // follow q-major in increment order -1, 0, +1.
  auto product = [](int q, int inc) {
    if (q == 0 && inc == 0) return 0;
    int pos = 1 + q * 3 + (inc + 1);
    return pos - (q * 3 + (inc + 1) > 1 ? 1 : 0);
  };

  std::unordered_set<std::string> used;
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(3) * n);
  pairs.emplace_back(0, 0);
  for (int q = 0; q < n; ++q)
    for (int inc : kIncs)
      if (!(q == 0 && inc == 0)) pairs.emplace_back(q, inc);
  for (auto [q, inc] : pairs)
    out.states.push_back(fresh_name(m.states[q] + increment_suffix(inc), used));

  for (auto [q, inc] : pairs)
    if (m.accept_states.count(q)) out.accept_states.insert(product(q, inc));

  out.reserve_tables();
  const int syms = m.tape_symbol_count();
  for (auto [q, inc] : pairs)
    for (int sym = 0; sym < syms; ++sym) out.set_dc(product(q, inc), sym, inc);

  static constexpr CounterSign kSigns[3] = {CounterSign::zero,
                                            CounterSign::plus,
                                            CounterSign::minus};
  for (int q = 0; q < n; ++q) {
    for (int sym = 0; sym < syms; ++sym) {
      for (CounterSign s : kSigns) {
        const auto& row = m.targets(q, sym, s);
        if (row.empty()) continue;
        for (int inc : kIncs) {
          const int src = product(q, inc);
          for (const Target& t : row) {
            Target nt = t;
            nt.state = product(t.state, t.increment);
            out.add_target(src, sym, s, nt);
          }
        }
      }
    }
  }

  out.check_structure();
  return out;
}

Machine lift_p_to_q(const Machine& m) {
  if (m.kind != MachineKind::rtp1ca || !m.simple)
    throw PreconditionError(
        "lift_p_to_q needs a simple rtp1ca (run simplify_rtp1ca first)");
  m.check_structure();

  const int n = m.state_count();
  Machine out;
  out.kind = MachineKind::rtq1ca;
  out.counter_mode = m.counter_mode;
  out.simple = true;
  out.states = m.states;
  out.input_alphabet = m.input_alphabet;

  // One register per state pair, source-major: w<i>.<j> tracks the move
  // i -> j, so observing the register sequence replays the stochastic path.
  auto reg = [n](int i, int j) { return i * n + j; };
  out.register_alphabet.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.register_alphabet.push_back("w" + std::to_string(i + 1) + "." +
                                      std::to_string(j + 1));
  out.initial_register = reg(0, 0);
  for (int i = 0; i < n; ++i)
    for (int j : m.accept_states) out.accept_registers.insert(reg(i, j));

  out.reserve_tables();
  out.dc = m.dc;

  static constexpr CounterSign kSigns[3] = {CounterSign::zero,
                                            CounterSign::plus,
                                            CounterSign::minus};
  const int syms = m.tape_symbol_count();
  for (int i = 0; i < n; ++i) {
    for (int sym = 0; sym < syms; ++sym) {
      for (CounterSign s : kSigns) {
        std::map<int, double> mass;
        for (const Target& t : m.targets(i, sym, s))
          mass[t.state] += t.amplitude.real();
        for (auto [j, p] : mass) {
          if (p <= 0.0) continue;
          Target t;
          t.state = j;
          t.increment = m.dc_increment(j, sym);
          t.reg = reg(i, j);
          t.amplitude = std::sqrt(p);
          out.add_target(i, sym, s, t);
        }
      }
    }
  }

  out.check_structure();
  return out;
}

}  // namespace q1ca
