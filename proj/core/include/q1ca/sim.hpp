#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "q1ca/machine.hpp"
#include "q1ca/superposition.hpp"

namespace q1ca {

/// Simulation knobs. Defaults reproduce the documented semantics exactly.
struct EngineOptions {
  enum class Engine { branch, density };

  Engine engine = Engine::branch;
  /// 0 means the default cap 4 * (|w| + 2) * (|Q| + 2). Explicit values
  /// below |w| + 2 are a precondition error.
  long long max_steps = 0;
  /// Branch engine: ceiling on live branches.
  int branch_cap = 10000;
  /// Squared-modulus threshold below which amplitudes are dropped.
  double prune_eps = 1e-24;
  /// Density engine: ceiling on |Q| * head positions * counter values.
  long long density_dim_cap = 20000000;
  /// Counter start value; blind acceptance tests the counter against it.
  long long initial_counter = 0;

  long long effective_max_steps(std::size_t input_len, int state_count) const;
};

/// Final outcome of one run. accept + reject + unresolved == 1 up to
/// floating-point noise; unresolved is nonzero only for oneq1ca runs that
/// hit the step cap.
struct RunOutcome {
  double accept_prob = 0.0;
  double reject_prob = 0.0;
  double unresolved_mass = 0.0;
  long long steps = 0;
};

/// "ACCEPT <p> REJECT <p> UNRESOLVED <p> STEPS <n>", 12 significant digits.
std::string format_outcome(const RunOutcome& o);

/// Exact probability propagation for rtp1ca machines.
RunOutcome run_rtp1ca(const Machine& m, std::string_view w,
                      const EngineOptions& opts = {});

/// Real-time quantum run, register observed once after the end marker.
/// Accepts kind rtq1ca and (viewing intermediate writes as discarded)
/// kq1ca.
RunOutcome run_rtq1ca(const Machine& m, std::string_view w,
                      const EngineOptions& opts = {});

/// Real-time quantum run with the register observed after every step:
/// accept symbols halt (blind counters route pre-end accepts and nonzero
/// final counters to reject), reject symbols halt, neutral mass left after
/// the end marker rejects.
RunOutcome run_kq1ca(const Machine& m, std::string_view w,
                     const EngineOptions& opts = {});

/// One-way quantum run, observed every step like kq1ca. Blind acceptance
/// requires the head to rest on the end marker with counter at its start
/// value. Mass still live at the step cap is reported unresolved.
RunOutcome run_1q1ca(const Machine& m, std::string_view w,
                     const EngineOptions& opts = {});

/// Density-operator evolution with the measurement schedule of m's kind.
/// Agrees with the branch engine to floating-point accuracy; rtp1ca input
/// forwards to run_rtp1ca. When step_mass is non-null it receives, per
/// step, live trace + measured mass (1 up to floating-point noise).
RunOutcome run_density(const Machine& m, std::string_view w,
                       const EngineOptions& opts = {},
                       std::vector<double>* step_mass = nullptr);

/// Dispatches on m.kind and opts.engine.
RunOutcome run(const Machine& m, std::string_view w,
               const EngineOptions& opts = {});

/// First step at which each of the N initial branches of a builtin m2-style
/// machine reaches the end marker in its scanning state.
struct PathArrival {
  int path = 0;        // 1-based branch index
  long long step = 0;  // 0 when the branch never arrives
};

/// Per-branch arrival steps for machines shaped like build_m2 output.
/// Throws UnsupportedError when m is not recognized.
std::vector<PathArrival> path_timing(const Machine& m, std::string_view w);

}  // namespace q1ca
