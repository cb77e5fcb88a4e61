#pragma once

#include "q1ca/machine.hpp"

namespace q1ca {

/// Rebuilds an rtp1ca as a simple rtp1ca over product states (q, c): the
/// new state remembers the increment that produced it, so dc((q, c), s) = c
/// for every symbol. The initial product state (q0, 0) comes first; a
/// product state accepts iff its first component does. Acceptance
/// probabilities are preserved exactly for every input.
Machine simplify_rtp1ca(const Machine& m);

/// Lifts a simple rtp1ca to a simple rtq1ca over the same states with one
/// register symbol w<i>.<j> per state pair: the operator for w<i>.<j> has
/// the single entry sqrt(p(i -> j)), so per-step register measurement
/// reproduces the stochastic evolution. Register w<i>.<j> accepts iff
/// state j accepts. Requires kind rtp1ca with simple set (run
/// simplify_rtp1ca first).
Machine lift_p_to_q(const Machine& m);

}  // namespace q1ca
