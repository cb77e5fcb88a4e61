#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "q1ca/machine.hpp"
#include "q1ca/sim.hpp"

namespace q1ca {

/// Builtin kq1ca with blind counter over {a,b,c}: accepts w with
/// |w|_a != |w|_b and (|w|_a = |w|_c or |w|_b = |w|_c) with probability
/// exactly 1/4, everything else with probability 0.
Machine build_m1();

/// Builtin oneq1ca family with blind counter over {a,b,c}, n >= 2 paths:
/// accepts w with |w|_a = |w|_b and |w|_a != |w|_c with probability
/// (n-1)/n, everything else with probability 0. Path j pauses j extra
/// steps on b and n-j+1 extra steps on c, so all paths reach the end
/// marker together iff |w|_b = |w|_c; an n-point Fourier transform on the
/// end marker then cancels the all-paths-aligned case into the rejecting
/// port. Throws PreconditionError for n < 2.
Machine build_m2(int n);

/// Erases every character of w not contained in keep.
std::string homomorphism(std::string_view w, std::string_view keep);

/// Membership predicates. in_l1/in_l2/in_l3/in_l4 throw AlphabetError on
/// symbols outside their alphabet; in_leq and in_lnh treat foreign symbols
/// as plain non-membership.
///
/// l3 over {a,b,c}: |w|_a != |w|_b and (|w|_a = |w|_c or |w|_b = |w|_c).
bool in_l3(std::string_view w);
/// l4 over {a,b,c}: |w|_a = |w|_b and |w|_a != |w|_c.
bool in_l4(std::string_view w);
/// leq over {a,b}: |w|_a = |w|_b.
bool in_leq(std::string_view w);
/// lnh over {a,b}: a^x b a^y1 b ... a^yt b with x,t,yi >= 1 and some
/// prefix sum y1+..+yk equal to x.
bool in_lnh(std::string_view w);

/// l1 lives over {a,b,0,1,2,3,4,5}. Projecting onto {a,0,1,2} must give
/// x a y with x in {0,1}* and y in {2}*; class 1 requires |x|_0 = |x|_1,
/// class 2 requires nonempty y and |x|_0 = |x|_1 + |y|. The projection
/// onto {b,3,4,5} is classified the same way with 3,4,5 in place of
/// 0,1,2. w is in l1 iff one projection is class 1 and the other class 2.
struct L1Detail {
  int a_class = 0;  // 1, 2, or 0 when neither
  int b_class = 0;
  bool member() const {
    return (a_class == 1 && b_class == 2) || (a_class == 2 && b_class == 1);
  }
};
L1Detail classify_l1(std::string_view w);
bool in_l1(std::string_view w);

/// l2: w1 c u1 w2 c u2 ... wn c un with n >= 1, wi in l1, and ui = d when
/// wi is class (1,2), ui = e when wi is class (2,1). Single streaming pass.
bool in_l2(std::string_view w);

/// Named membership oracle for sweeps. alphabet lists the symbols used to
/// enumerate strings; empty means "use the machine's input alphabet".
struct LanguageOracle {
  std::string name;
  std::string alphabet;
  std::function<bool(std::string_view)> member;
};

/// Registry: l1 l2 l3 l4 leq lnh all ("all" matches every string).
const std::vector<LanguageOracle>& oracle_registry();
const LanguageOracle* find_oracle(std::string_view name);

/// Exhaustive sweep of every string over the oracle alphabet up to
/// max_len, recording acceptance statistics against the oracle verdicts.
struct ClassifyReport {
  long long strings = 0;
  long long members = 0;
  double min_member_accept = 1.0;     // 1 when there are no members
  double max_nonmember_accept = 0.0;  // 0 when everything is a member
  bool one_sided = false;   // every nonmember accepted with prob <= 1e-12
  double error_bound = 0.0; // 1 - min_member_accept (0 without members)
  bool separated = false;   // max nonmember accept < min member accept
  double cutpoint_low = 0.0;
  double cutpoint_high = 0.0;

  std::string to_text() const;
};

/// Called once per swept string when given to classify.
using SweepRow =
    std::function<void(const std::string&, bool, const RunOutcome&)>;

ClassifyReport classify(const Machine& m, const LanguageOracle& oracle,
                        int max_len, const EngineOptions& opts = {},
                        const SweepRow& row = {});

}  // namespace q1ca
