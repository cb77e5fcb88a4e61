#include "q1ca/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>

#include "q1ca/amplitude.hpp"

namespace q1ca {

long long EngineOptions::effective_max_steps(std::size_t input_len,
                                             int state_count) const {
  long long floor = static_cast<long long>(input_len) + 2;
  if (max_steps > 0) {
    if (max_steps < floor)
      throw PreconditionError("maxSteps must be at least |w| + 2");
    return max_steps;
  }
  return 4 * floor * (state_count + 2);
}

std::string format_outcome(const RunOutcome& o) {
  return "ACCEPT " + format_probability(o.accept_prob) + " REJECT " +
         format_probability(o.reject_prob) + " UNRESOLVED " +
         format_probability(o.unresolved_mass) + " STEPS " +
         std::to_string(o.steps);
}

RunOutcome run_rtp1ca(const Machine& m, std::string_view w,
                      const EngineOptions& opts) {
  if (m.kind != MachineKind::rtp1ca)
    throw PreconditionError("run_rtp1ca applies to rtp1ca machines");
  std::vector<int> tape = tape_string(m, w);
  opts.effective_max_steps(tape.size() - 2, m.state_count());

  std::unordered_map<ConfigKey, double> dist;
  dist[config_key(0, 0, opts.initial_counter)] = 1.0;
  for (int sym : tape) {
    std::unordered_map<ConfigKey, double> next;
    next.reserve(dist.size() * 2);
    for (const auto& [key, p] : dist) {
      Configuration c = config_from_key(key);
      for (const Target& t : m.targets(c.state, sym, counter_sign(c.counter))) {
        double step_p = p * t.amplitude.real();
        if (step_p == 0.0) continue;
        next[config_key(t.state, 0, c.counter + t.increment)] += step_p;
      }
    }
    dist = std::move(next);
  }

  double accept = 0.0;
  for (const auto& [key, p] : dist) {
    Configuration c = config_from_key(key);
    if (!m.accept_states.count(c.state)) continue;
    if (m.counter_mode == CounterMode::blind && c.counter != opts.initial_counter)
      continue;
    accept += p;
  }
  return {accept, 1.0 - accept, 0.0, static_cast<long long>(tape.size())};
}

namespace {

// One evolution step of every branch. Real-time machines read
// tape[step - 1]; one-way machines read under each configuration's head.
std::vector<Branch> advance(const Machine& m, const std::vector<int>& tape,
                            const std::vector<Branch>& branches,
                            long long step, bool one_way, double prune_eps) {
  std::vector<Branch> out;
  int last_pos = static_cast<int>(tape.size()) - 1;
  for (const Branch& b : branches) {
    std::unordered_map<int, PureState> per_reg;
    for (const auto& [key, amp] : b.vec.entries) {
      Configuration c = config_from_key(key);
      int sym = one_way ? tape[c.head] : tape[step - 1];
      for (const Target& t : m.targets(c.state, sym, counter_sign(c.counter))) {
        if (t.amplitude == Amplitude{}) continue;
        int head = c.head;
        if (one_way && t.move == HeadMove::right) {
          if (c.head == last_pos)
            throw SemanticsError(
                "transition moves the head past the end marker (state '" +
                m.states[c.state] + "')");
          ++head;
        }
        per_reg[t.reg].accumulate(
            config_key(t.state, head, c.counter + t.increment),
            amp * t.amplitude);
      }
    }
    for (auto& [reg, vec] : per_reg) {
      vec.prune(prune_eps);
      if (!vec.empty()) out.push_back({reg, std::move(vec)});
    }
  }
  return out;
}

// Exact weight-level merge of branches that consist of one identical
// configuration. Only called when the recorded register symbol is dead
// (it has either been measured already or will be overwritten before the
// next measurement), so merged branches keep an arbitrary representative.
void merge_singletons(std::vector<Branch>& branches) {
  std::unordered_map<ConfigKey, std::size_t> index;
  std::vector<Branch> out;
  out.reserve(branches.size());
  for (Branch& b : branches) {
    if (b.vec.size() != 1) {
      out.push_back(std::move(b));
      continue;
    }
    auto entry = *b.vec.entries.begin();
    auto [it, inserted] = index.try_emplace(entry.first, out.size());
    if (inserted) {
      out.push_back(std::move(b));
    } else {
      Amplitude& held = out[it->second].vec.entries[entry.first];
      held = Amplitude(
          std::sqrt(std::norm(held) + std::norm(entry.second)), 0.0);
    }
  }
  branches = std::move(out);
}

void enforce_branch_cap(const std::vector<Branch>& branches,
                        const EngineOptions& opts) {
  if (static_cast<long long>(branches.size()) > opts.branch_cap)
    throw CapacityError("live branches (" + std::to_string(branches.size()) +
                        ") exceed the branch cap (" +
                        std::to_string(opts.branch_cap) + ")");
}

std::vector<Branch> initial_branches(const Machine& m,
                                     const EngineOptions& opts) {
  Branch b;
  b.last_reg = m.initial_register;
  b.vec.accumulate(config_key(0, 0, opts.initial_counter), 1.0);
  return {std::move(b)};
}

}  // namespace

RunOutcome run_rtq1ca(const Machine& m, std::string_view w,
                      const EngineOptions& opts) {
  if (m.kind != MachineKind::rtq1ca && m.kind != MachineKind::kq1ca)
    throw PreconditionError("run_rtq1ca applies to rtq1ca/kq1ca machines");
  std::vector<int> tape = tape_string(m, w);
  opts.effective_max_steps(tape.size() - 2, m.state_count());

  std::vector<Branch> branches = initial_branches(m, opts);
  long long total = static_cast<long long>(tape.size());
  for (long long step = 1; step <= total; ++step) {
    branches = advance(m, tape, branches, step, false, opts.prune_eps);
    // The register is only read at the final observation, so identical
    // intermediate branches can be folded.
    if (step < total) merge_singletons(branches);
    enforce_branch_cap(branches, opts);
  }

  double accept = 0.0;
  for (const Branch& b : branches) {
    if (!m.accept_registers.count(b.last_reg)) continue;
    accept += m.counter_mode == CounterMode::blind
                  ? b.vec.norm_squared_counter(opts.initial_counter)
                  : b.vec.norm_squared();
  }
  return {accept, 1.0 - accept, 0.0, total};
}

RunOutcome run_kq1ca(const Machine& m, std::string_view w,
                     const EngineOptions& opts) {
  if (m.kind != MachineKind::kq1ca)
    throw PreconditionError("run_kq1ca applies to kq1ca machines");
  std::vector<int> tape = tape_string(m, w);
  opts.effective_max_steps(tape.size() - 2, m.state_count());
  bool blind = m.counter_mode == CounterMode::blind;

  std::vector<Branch> branches = initial_branches(m, opts);
  double accept = 0.0;
  double reject = 0.0;
  long long total = static_cast<long long>(tape.size());
  long long executed = 0;
  for (long long step = 1; step <= total && !branches.empty(); ++step) {
    branches = advance(m, tape, branches, step, false, opts.prune_eps);
    executed = step;
    std::vector<Branch> keep;
    for (Branch& b : branches) {
      if (m.accept_registers.count(b.last_reg)) {
        double mass = b.vec.norm_squared();
        if (!blind) {
          accept += mass;
        } else if (step == total) {
          double zero = b.vec.norm_squared_counter(opts.initial_counter);
          accept += zero;
          reject += mass - zero;
        } else {
          // Blind acceptance needs the whole input processed first.
          reject += mass;
        }
      } else if (m.reject_registers.count(b.last_reg)) {
        reject += b.vec.norm_squared();
      } else {
        keep.push_back(std::move(b));
      }
    }
    branches = std::move(keep);
    merge_singletons(branches);
    enforce_branch_cap(branches, opts);
  }
  // Neutral mass that survives the end marker halts without accepting.
  for (const Branch& b : branches) reject += b.vec.norm_squared();
  return {accept, reject, 0.0, executed};
}

RunOutcome run_1q1ca(const Machine& m, std::string_view w,
                     const EngineOptions& opts) {
  if (m.kind != MachineKind::oneq1ca)
    throw PreconditionError("run_1q1ca applies to 1q1ca machines");
  std::vector<int> tape = tape_string(m, w);
  long long cap = opts.effective_max_steps(tape.size() - 2, m.state_count());
  bool blind = m.counter_mode == CounterMode::blind;
  int last_pos = static_cast<int>(tape.size()) - 1;

  std::vector<Branch> branches = initial_branches(m, opts);
  double accept = 0.0;
  double reject = 0.0;
  long long executed = 0;
  for (long long step = 1; step <= cap && !branches.empty(); ++step) {
    branches = advance(m, tape, branches, step, true, opts.prune_eps);
    executed = step;
    std::vector<Branch> keep;
    for (Branch& b : branches) {
      if (m.accept_registers.count(b.last_reg)) {
        double mass = b.vec.norm_squared();
        if (!blind) {
          accept += mass;
        } else {
          // Input processed (head resting on the end marker) and counter
          // back at its start value.
          double zero = b.vec.norm_squared_counter_head(opts.initial_counter,
                                                        last_pos);
          accept += zero;
          reject += mass - zero;
        }
      } else if (m.reject_registers.count(b.last_reg)) {
        reject += b.vec.norm_squared();
      } else {
        keep.push_back(std::move(b));
      }
    }
    branches = std::move(keep);
    merge_singletons(branches);
    enforce_branch_cap(branches, opts);
  }
  double unresolved = 0.0;
  for (const Branch& b : branches) unresolved += b.vec.norm_squared();
  return {accept, reject, unresolved, executed};
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<ConfigKey, ConfigKey>& p) const {
    std::uint64_t h = p.first * 0x9e3779b97f4a7c15ull;
    h ^= p.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

using Rho = std::unordered_map<std::pair<ConfigKey, ConfigKey>, Amplitude,
                               PairHash>;

double rho_trace(const Rho& rho) {
  double t = 0.0;
  for (const auto& [pr, z] : rho)
    if (pr.first == pr.second) t += z.real();
  return t;
}

}  // namespace

RunOutcome run_density(const Machine& m, std::string_view w,
                       const EngineOptions& opts,
                       std::vector<double>* step_mass) {
  if (m.kind == MachineKind::rtp1ca) return run_rtp1ca(m, w, opts);
  std::vector<int> tape = tape_string(m, w);
  bool one_way = m.kind == MachineKind::oneq1ca;
  bool blind = m.counter_mode == CounterMode::blind;
  bool per_step_measure = m.kind != MachineKind::rtq1ca;
  long long total = one_way
                        ? opts.effective_max_steps(tape.size() - 2, m.state_count())
                        : static_cast<long long>(tape.size());
  if (!one_way) opts.effective_max_steps(tape.size() - 2, m.state_count());
  int last_pos = static_cast<int>(tape.size()) - 1;

  long long counter_values = 2 * total + 1;
  long long nominal = static_cast<long long>(m.state_count()) * counter_values *
                      (one_way ? static_cast<long long>(tape.size()) : 1);
  if (nominal > opts.density_dim_cap)
    throw CapacityError("density configuration space (" +
                        std::to_string(nominal) + ") exceeds the cap (" +
                        std::to_string(opts.density_dim_cap) + ")");

  ConfigKey k0 = config_key(0, 0, opts.initial_counter);
  Rho rho;
  rho[{k0, k0}] = 1.0;
  double accept = 0.0;
  double reject = 0.0;
  long long executed = 0;

  for (long long step = 1; step <= total && !rho.empty(); ++step) {
    Rho next;
    next.reserve(rho.size());
    bool final_rt = !one_way && step == static_cast<long long>(tape.size());
    for (const auto& [pr, z] : rho) {
      Configuration c1 = config_from_key(pr.first);
      Configuration c2 = config_from_key(pr.second);
      int sym1 = one_way ? tape[c1.head] : tape[step - 1];
      int sym2 = one_way ? tape[c2.head] : tape[step - 1];
      const auto& t1s = m.targets(c1.state, sym1, counter_sign(c1.counter));
      const auto& t2s = m.targets(c2.state, sym2, counter_sign(c2.counter));
      for (const Target& t1 : t1s) {
        if (t1.amplitude == Amplitude{}) continue;
        int h1 = c1.head;
        if (one_way && t1.move == HeadMove::right) {
          if (c1.head == last_pos)
            throw SemanticsError(
                "transition moves the head past the end marker (state '" +
                m.states[c1.state] + "')");
          ++h1;
        }
        ConfigKey d1 = config_key(t1.state, h1, c1.counter + t1.increment);
        for (const Target& t2 : t2s) {
          if (t2.reg != t1.reg || t2.amplitude == Amplitude{}) continue;
          int h2 = c2.head;
          if (one_way && t2.move == HeadMove::right) {
            if (c2.head == last_pos)
              throw SemanticsError(
                  "transition moves the head past the end marker (state '" +
                  m.states[c2.state] + "')");
            ++h2;
          }
          ConfigKey d2 = config_key(t2.state, h2, c2.counter + t2.increment);
          Amplitude contrib = z * t1.amplitude * std::conj(t2.amplitude);

          bool measured_now = per_step_measure || final_rt;
          bool is_accept = m.accept_registers.count(t1.reg) > 0;
          bool is_reject = m.reject_registers.count(t1.reg) > 0;
          if (!measured_now || (per_step_measure && !is_accept && !is_reject)) {
            next[{d1, d2}] += contrib;
            continue;
          }
          // Measured this step: only diagonal entries carry probability.
          if (d1 != d2) continue;
          double mass = contrib.real();
          Configuration dest = config_from_key(d1);
          if (is_accept) {
            bool zero_ok = !blind || (dest.counter == opts.initial_counter &&
                                      (one_way ? dest.head == last_pos
                                               : step == total));
            if (!per_step_measure) {
              // rtq1ca: single observation after the end marker.
              zero_ok = !blind || dest.counter == opts.initial_counter;
            }
            if (zero_ok)
              accept += mass;
            else
              reject += mass;
          } else {
            reject += mass;
          }
        }
      }
    }
    for (auto it = next.begin(); it != next.end();)
      it = std::abs(it->second) < opts.prune_eps ? next.erase(it)
                                                 : std::next(it);
    rho = std::move(next);
    executed = step;
    if (step_mass) step_mass->push_back(rho_trace(rho) + accept + reject);
  }

  double leftover = rho_trace(rho);
  RunOutcome out;
  out.steps = executed;
  out.accept_prob = accept;
  if (one_way) {
    out.reject_prob = reject;
    out.unresolved_mass = leftover;
  } else if (m.kind == MachineKind::kq1ca) {
    out.reject_prob = reject + leftover;
    out.unresolved_mass = 0.0;
  } else {
    out.reject_prob = 1.0 - accept;
    out.unresolved_mass = 0.0;
    out.steps = total;
  }
  return out;
}

RunOutcome run(const Machine& m, std::string_view w,
               const EngineOptions& opts) {
  if (opts.engine == EngineOptions::Engine::density)
    return run_density(m, w, opts);
  switch (m.kind) {
    case MachineKind::rtp1ca:
      return run_rtp1ca(m, w, opts);
    case MachineKind::rtq1ca:
      return run_rtq1ca(m, w, opts);
    case MachineKind::kq1ca:
      return run_kq1ca(m, w, opts);
    case MachineKind::oneq1ca:
      return run_1q1ca(m, w, opts);
  }
  throw PreconditionError("unknown machine kind");
}

std::vector<PathArrival> path_timing(const Machine& m, std::string_view w) {
  if (m.kind != MachineKind::oneq1ca)
    throw UnsupportedError("path timing requires a 1q1ca of the builtin "
                           "multi-path shape");
  // Recognize the builtin shape: q1, scanning states q<j>.1 with pause
  // chains q<j>.<k>, and Fourier ports p<l>.
  int paths = 0;
  for (const auto& name : m.states)
    if (name.size() >= 2 && name[0] == 'p' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos)
      ++paths;
  if (paths < 2)
    throw UnsupportedError("path timing requires a 1q1ca of the builtin "
                           "multi-path shape");
  std::vector<int> scan_state(paths + 1, -1);
  for (int q = 0; q < m.state_count(); ++q) {
    const std::string& name = m.states[q];
    if (name.size() < 4 || name[0] != 'q') continue;
    std::size_t dot = name.find('.');
    if (dot == std::string::npos || name.substr(dot + 1) != "1") continue;
    std::string jpart = name.substr(1, dot - 1);
    if (jpart.empty() ||
        jpart.find_first_not_of("0123456789") != std::string::npos)
      continue;
    int j = std::stoi(jpart);
    if (j >= 1 && j <= paths) scan_state[j] = q;
  }
  for (int j = 1; j <= paths; ++j)
    if (scan_state[j] < 0)
      throw UnsupportedError("path timing requires a 1q1ca of the builtin "
                             "multi-path shape");

  EngineOptions opts;
  std::vector<int> tape = tape_string(m, w);
  long long cap = opts.effective_max_steps(tape.size() - 2, m.state_count());
  int last_pos = static_cast<int>(tape.size()) - 1;

  std::vector<PathArrival> arrivals;
  for (int j = 1; j <= paths; ++j) arrivals.push_back({j, 0});
  int missing = paths;

  std::vector<Branch> branches = initial_branches(m, opts);
  for (long long step = 1; step <= cap && !branches.empty() && missing > 0;
       ++step) {
    branches = advance(m, tape, branches, step, true, opts.prune_eps);
    std::vector<Branch> keep;
    for (Branch& b : branches) {
      if (m.accept_registers.count(b.last_reg) ||
          m.reject_registers.count(b.last_reg))
        continue;
      for (const auto& [key, amp] : b.vec.entries) {
        Configuration c = config_from_key(key);
        if (c.head != last_pos) continue;
        for (int j = 1; j <= paths; ++j)
          if (scan_state[j] == c.state && arrivals[j - 1].step == 0) {
            arrivals[j - 1].step = step;
            --missing;
          }
      }
      keep.push_back(std::move(b));
    }
    branches = std::move(keep);
    merge_singletons(branches);
  }
  return arrivals;
}

}  // namespace q1ca
