#pragma once

#include <string>
#include <utility>
#include <vector>

#include "q1ca/machine.hpp"

namespace q1ca {

/// One failed well-formedness condition: condition id, the quantifier
/// assignment it failed at (rendered with declared names), deviation size.
struct Violation {
  std::string condition;
  std::string witness;
  double magnitude = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string condition, std::string witness, double magnitude);
  /// One line per violation: "COND <id> WITNESS <tuple> DEV <magnitude>".
  std::string to_text() const;
};

/// Numeric slack for every well-formedness comparison.
inline constexpr double kValidationTolerance = 1e-9;

/// rtp1ca: every (state, symbol, sign) row sums to 1 and entries lie in
/// [0,1]. Conditions: "prob-sum", "prob-range".
ValidationReport check_stochastic(const Machine& m);

/// rtq1ca/kq1ca in general form: per (symbol, sign) the columns are
/// orthonormal ("eq1") and the two cross-increment sums vanish, pairing
/// counter writes +1 against 0 and 0 against -1 ("eq2"), and +1 against -1
/// ("eq3"), with both signs quantified independently.
ValidationReport check_general_q(const Machine& m);

/// Simple rtq1ca/kq1ca: per (symbol, sign) the register-indexed operator
/// family satisfies sum_w E_w^dagger E_w = I. Condition: "admissible".
ValidationReport check_simple_q(const Machine& m);

/// oneq1ca: the eight separability conditions "c1".."c8" over configuration
/// pairs that evolution can bring to the same configuration: c1 is
/// per-(symbol, sign) column orthonormality; c2/c3 pair counter offsets
/// (+1,0)/(0,-1) and (+1,-1) at equal positions; c4 pairs a right move
/// against a stay at equal counters; c5..c8 pair right moves against stays
/// at counter offsets (+1,0)/(0,-1), (-1,0)/(0,+1), (+1,-1), (-1,+1).
ValidationReport check_one_way_q(const Machine& m);

/// Blind machines: transition amplitudes must not depend on the counter
/// sign. Condition: "blind". Throws PreconditionError on checked machines.
ValidationReport check_blind(const Machine& m);

/// Runs every checker that applies to m's kind (plus check_blind when the
/// counter is blind) and concatenates the reports.
ValidationReport validate_machine(const Machine& m);

/// A matrix stored column-major: result[c] is column c.
using ColumnMatrix = std::vector<std::vector<Amplitude>>;

/// Extends the given pairwise-orthonormal columns (0-based indices) to a
/// full dim x dim unitary. Missing columns are filled, in index order, by
/// Gram-Schmidt over standard basis vectors taken in index order, skipping
/// candidates that are linearly dependent on what is already placed.
/// Throws CompletionError if the supplied columns are not orthonormal
/// within kValidationTolerance or indices are out of range/duplicated.
ColumnMatrix complete_unitary(
    const std::vector<std::pair<int, std::vector<Amplitude>>>& columns,
    int dimension);

/// Fills every unspecified transition column of a quantum machine so that
/// the result is well formed, and returns the completed machine.
///
/// For each symbol, the counter increment a destination state is entered
/// with must be consistent across the specified transitions (completion
/// error otherwise); likewise each destination state of a oneq1ca must be
/// entered with a single head direction across the whole machine. The
/// completed columns only use coordinates obeying those assignments, with
/// candidates ordered register-major (neutral register first) and
/// state-index minor, so all cross-increment and cross-direction conditions
/// keep holding. Simple machines complete within their dc map and stay
/// simple; blind machines receive identical columns for all three signs.
Machine complete_machine(const Machine& m);

}  // namespace q1ca
