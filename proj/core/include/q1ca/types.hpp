#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace q1ca {

/// Transition amplitude. rtp1ca machines store probabilities in the real
/// part and keep the imaginary part zero.
using Amplitude = std::complex<double>;

/// Counter status visible to a transition: exactly zero, positive, negative.
enum class CounterSign : std::uint8_t { zero = 0, plus = 1, minus = 2 };

/// Head move of a one-way machine. Real-time machines always advance.
enum class HeadMove : std::uint8_t { stay = 0, right = 1 };

/// Machine flavors supported by the toolkit.
///  - rtp1ca: real-time probabilistic, measured once after the end marker
///  - rtq1ca: real-time quantum, register observed once after the end marker
///  - kq1ca:  real-time quantum, register observed after every step
///  - oneq1ca: one-way quantum ("1q1ca" in files), register observed after
///    every step, head may stay or move right
enum class MachineKind : std::uint8_t { rtp1ca, rtq1ca, kq1ca, oneq1ca };

/// Checked counters expose their sign to transitions; blind counters feed
/// every transition the same amplitudes regardless of sign and make
/// acceptance additionally require a zero counter at the end.
enum class CounterMode : std::uint8_t { checked, blind };

inline CounterSign counter_sign(long long value) {
  if (value == 0) return CounterSign::zero;
  return value > 0 ? CounterSign::plus : CounterSign::minus;
}

std::string_view to_string(CounterSign s);
std::string_view to_string(HeadMove d);
std::string_view to_string(MachineKind k);
std::string_view to_string(CounterMode m);

std::optional<CounterSign> counter_sign_from(std::string_view token);
std::optional<MachineKind> machine_kind_from(std::string_view token);
std::optional<CounterMode> counter_mode_from(std::string_view token);

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A symbol outside the expected alphabet.
struct AlphabetError : Error {
  using Error::Error;
};

/// Malformed textual input (machine files, amplitude expressions).
struct ParseError : Error {
  int line = 0;    // 1-based, 0 when not tied to a file
  int column = 0;  // 1-based, 0 when unknown
  std::string raw;  // message without the position suffix
  ParseError(const std::string& msg, int line_ = 0, int column_ = 0);
};

/// An operation was called on a machine it does not apply to.
struct PreconditionError : Error {
  using Error::Error;
};

/// A configured resource limit (branch cap, density dimension cap) was hit.
struct CapacityError : Error {
  using Error::Error;
};

/// The run stepped into undefined behavior (head past the end marker).
struct SemanticsError : Error {
  using Error::Error;
};

/// Supplied columns cannot be extended to a unitary.
struct CompletionError : Error {
  using Error::Error;
};

/// The machine shape required by an analysis was not recognized.
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace q1ca
