#pragma once

#include <cstdint>
#include <iterator>
#include <unordered_map>
#include <vector>

#include "q1ca/types.hpp"

namespace q1ca {

/// One basis configuration: control state, head position (0-based tape
/// index, always 0 for real-time machines), counter value.
struct Configuration {
  int state = 0;
  int head = 0;
  long long counter = 0;
};

/// Packed configuration: 16-bit state, 16-bit head, 32-bit signed counter.
using ConfigKey = std::uint64_t;

inline ConfigKey config_key(int state, int head, long long counter) {
  return (static_cast<std::uint64_t>(static_cast<std::uint16_t>(state)) << 48) |
         (static_cast<std::uint64_t>(static_cast<std::uint16_t>(head)) << 32) |
         static_cast<std::uint32_t>(static_cast<std::int32_t>(counter));
}

inline Configuration config_from_key(ConfigKey k) {
  Configuration c;
  c.state = static_cast<int>(k >> 48);
  c.head = static_cast<int>((k >> 32) & 0xffff);
  c.counter = static_cast<std::int32_t>(static_cast<std::uint32_t>(k & 0xffffffffu));
  return c;
}

/// Sparse vector over configurations.
struct PureState {
  std::unordered_map<ConfigKey, Amplitude> entries;

  void accumulate(ConfigKey k, const Amplitude& a) { entries[k] += a; }

  double norm_squared() const {
    double total = 0.0;
    for (const auto& [k, a] : entries) total += std::norm(a);
    return total;
  }

  /// Squared norm restricted to entries with the given counter value.
  double norm_squared_counter(long long counter) const {
    double total = 0.0;
    for (const auto& [k, a] : entries)
      if (config_from_key(k).counter == counter) total += std::norm(a);
    return total;
  }

  /// Squared norm restricted to a counter value and head position.
  double norm_squared_counter_head(long long counter, int head) const {
    double total = 0.0;
    for (const auto& [k, a] : entries) {
      Configuration c = config_from_key(k);
      if (c.counter == counter && c.head == head) total += std::norm(a);
    }
    return total;
  }

  /// Drops entries with squared modulus below eps_sq.
  void prune(double eps_sq) {
    for (auto it = entries.begin(); it != entries.end();)
      it = std::norm(it->second) < eps_sq ? entries.erase(it) : std::next(it);
  }

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

/// One decoherent branch of a run: the register symbol written by the step
/// that produced it, plus an unnormalized vector whose squared norm is the
/// branch weight.
struct Branch {
  int last_reg = -1;
  PureState vec;
};

/// Classical mixture of branches plus the probability mass already measured
/// into accept/reject outcomes.
struct Mixture {
  std::vector<Branch> branches;
  double accept_mass = 0.0;
  double reject_mass = 0.0;

  double live_mass() const {
    double total = 0.0;
    for (const auto& b : branches) total += b.vec.norm_squared();
    return total;
  }
};

}  // namespace q1ca
