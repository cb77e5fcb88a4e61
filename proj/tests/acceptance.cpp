// Acceptance gate: seven end-to-end criteria over the library, each printed
// as one PASS/FAIL line. Exits 0 only when all seven hold.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "q1ca/sim.hpp"
#include "q1ca/transform.hpp"
#include "q1ca/validate.hpp"
#include "q1ca/zoo.hpp"
#include "test_support.hpp"

using namespace q1ca;
using namespace q1ca::testing;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kTightTol = 1e-9;    // agreement with pinned probabilities
constexpr double kSoundTol = 1e-12;   // one-sided rejection leakage

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// criterion 1: the builtin kq1ca accepts its language with probability
// exactly 1/4 and rejects everything else with probability 1, over every
// string of length <= 7.

bool criterion1(std::string& detail) {
  const double budget = 10.0;
  const auto t0 = Clock::now();
  const Machine m1 = build_m1();
  long long members = 0;
  long long total = 0;
  for (const std::string& w : all_strings("abc", 7)) {
    const RunOutcome o = run_rtq1ca(m1, w);
    ++total;
    if (in_l3(w)) {
      ++members;
      if (std::abs(o.accept_prob - 0.25) > kTightTol ||
          std::abs(o.reject_prob - 0.75) > kTightTol) {
        detail = "w=" + w + " accept=" + fmt(o.accept_prob);
        return false;
      }
    } else if (o.accept_prob > kSoundTol ||
               std::abs(o.reject_prob - 1.0) > kTightTol) {
      detail = "nonmember w=" + w + " accept=" + fmt(o.accept_prob);
      return false;
    }
  }
  const double dt = seconds_since(t0);
  detail = std::to_string(total) + " strings, " + std::to_string(members) +
           " members, " + fmt(dt) + "s";
  return total == 3280 && members == 1038 && dt < budget;
}

// ---------------------------------------------------------------------------
// criterion 2: the builtin one-way family accepts its language with
// probability exactly (n-1)/n for n in {2,3,5} and rejects everything else
// with probability 1, with no unresolved mass, over every string of
// length <= 6.

bool criterion2(std::string& detail) {
  const double budget = 60.0;
  const auto t0 = Clock::now();
  long long total = 0;
  for (int n : {2, 3, 5}) {
    const Machine m2 = build_m2(n);
    const double target = (n - 1.0) / n;
    for (const std::string& w : all_strings("abc", 6)) {
      const RunOutcome o = run_1q1ca(m2, w);
      ++total;
      if (o.unresolved_mass > kSoundTol) {
        detail = "n=" + std::to_string(n) + " w=" + w + " unresolved";
        return false;
      }
      if (in_l4(w)) {
        if (std::abs(o.accept_prob - target) > kTightTol) {
          detail = "n=" + std::to_string(n) + " w=" + w +
                   " accept=" + fmt(o.accept_prob);
          return false;
        }
      } else if (o.accept_prob > kSoundTol ||
                 std::abs(o.reject_prob - 1.0) > kTightTol) {
        detail = "n=" + std::to_string(n) + " nonmember w=" + w +
                 " accept=" + fmt(o.accept_prob);
        return false;
      }
    }
  }
  const double dt = seconds_since(t0);
  detail = std::to_string(total) + " runs, " + fmt(dt) + "s";
  return total == 3 * 1093 && dt < budget;
}

// ---------------------------------------------------------------------------
// criterion 3: for 50 seeded random stochastic machines, the simplify+lift
// pipeline preserves every acceptance probability on every string of
// length <= 5, and the lifted machines satisfy the simple well-formedness
// condition.

bool criterion3(std::string& detail) {
  const double budget = 30.0;
  const auto t0 = Clock::now();
  std::mt19937 rng(kSeed + 100);
  const std::vector<std::string> words = all_strings("ab", 5);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Machine m = make_random_rtp1ca(rng, 2 + k % 3);
    const Machine lifted = lift_p_to_q(simplify_rtp1ca(m));
    if (!check_simple_q(lifted).ok) {
      detail = "machine " + std::to_string(k) + " lifted form not admissible";
      return false;
    }
    for (const std::string& w : words) {
      const double want = run_rtp1ca(m, w).accept_prob;
      const double got = run_rtq1ca(lifted, w).accept_prob;
      worst = std::max(worst, std::abs(want - got));
      if (std::abs(want - got) > kTightTol) {
        detail = "machine " + std::to_string(k) + " w=" + w +
                 " drift=" + fmt(want - got);
        return false;
      }
    }
  }
  const double dt = seconds_since(t0);
  detail = "50 machines, worst drift " + fmt(worst) + ", " + fmt(dt) + "s";
  return dt < budget;
}

// ---------------------------------------------------------------------------
// criterion 4: the validators accept every builtin machine and flag every
// one of 100 seeded single-amplitude mutations.

bool criterion4(std::string& detail) {
  const double budget = 20.0;
  const auto t0 = Clock::now();
  std::vector<Machine> pool = {build_m1(), build_m2(2), build_m2(3),
                               build_m2(5)};
  if (!check_general_q(pool[0]).ok || !check_blind(pool[0]).ok) {
    detail = "builtin kq1ca rejected";
    return false;
  }
  for (int n = 2; n <= 6; ++n) {
    const Machine m2 = build_m2(n);
    if (!check_one_way_q(m2).ok || !check_blind(m2).ok) {
      detail = "builtin one-way machine n=" + std::to_string(n) + " rejected";
      return false;
    }
  }

  std::mt19937 rng(kSeed + 200);
  int caught = 0;
  for (int k = 0; k < 100; ++k) {
    const Machine& base = pool[k % pool.size()];
    const auto slots = all_slots(base);
    std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
    const TargetSlot slot = slots[pick(rng)];
    Machine bad = with_amplitude_delta(base, slot, 0.1);
    if (k % 2 == 1) {
      // also shift the other two signs so the defect is sign-uniform
      for (CounterSign s :
           {CounterSign::zero, CounterSign::plus, CounterSign::minus})
        if (s != slot.sign)
          bad = with_amplitude_delta(bad, {slot.state, slot.sym, s, slot.index},
                                     0.1);
    }
    if (!validate_machine(bad).ok) ++caught;
  }
  const double dt = seconds_since(t0);
  detail = std::to_string(caught) + "/100 mutations flagged, " + fmt(dt) + "s";
  return caught == 100 && dt < budget;
}

// ---------------------------------------------------------------------------
// criterion 5: branch and density engines agree to 1e-9 on both builtin
// machines, and the density trace stays normalized at every step.

bool criterion5(std::string& detail) {
  const Machine m1 = build_m1();
  const Machine m2 = build_m2(2);
  double worst = 0.0;
  auto compare = [&](const Machine& m, const std::string& w,
                     const RunOutcome& branch) {
    std::vector<double> mass;
    const RunOutcome dens = run_density(m, w, {}, &mass);
    worst = std::max({worst, std::abs(branch.accept_prob - dens.accept_prob),
                      std::abs(branch.reject_prob - dens.reject_prob)});
    for (double x : mass)
      if (std::abs(x - 1.0) > kTightTol) return false;
    return std::abs(branch.accept_prob - dens.accept_prob) <= kTightTol &&
           std::abs(branch.reject_prob - dens.reject_prob) <= kTightTol;
  };
  for (const std::string& w : all_strings("abc", 5))
    if (!compare(m1, w, run_rtq1ca(m1, w))) {
      detail = "kq1ca w=" + w;
      return false;
    }
  for (const std::string& w : all_strings("abc", 4))
    if (!compare(m2, w, run_1q1ca(m2, w))) {
      detail = "one-way w=" + w;
      return false;
    }
  detail = "485 strings, worst gap " + fmt(worst);
  return true;
}

// ---------------------------------------------------------------------------
// criterion 6: per-path arrival steps match the closed form
// |w| + j*|w|_b + (n-j+1)*|w|_c + 1, and the paths all arrive together
// exactly when |w|_b = |w|_c.

bool criterion6(std::string& detail) {
  std::mt19937 rng(kSeed + 300);
  for (int n : {2, 3}) {
    const Machine m2 = build_m2(n);
    for (int k = 0; k < 100; ++k) {
      const std::string w = random_string(rng, "abc", 12);
      const long long len = static_cast<long long>(w.size());
      const long long nb = std::count(w.begin(), w.end(), 'b');
      const long long nc = std::count(w.begin(), w.end(), 'c');
      const std::vector<PathArrival> arrivals = path_timing(m2, w);
      if (static_cast<int>(arrivals.size()) != n) {
        detail = "n=" + std::to_string(n) + " w=" + w + " path count";
        return false;
      }
      bool aligned = true;
      for (const PathArrival& a : arrivals) {
        const long long want = len + a.path * nb + (n - a.path + 1) * nc + 1;
        if (a.step != want) {
          detail = "n=" + std::to_string(n) + " w=" + w + " path " +
                   std::to_string(a.path) + " step " + std::to_string(a.step) +
                   " want " + std::to_string(want);
          return false;
        }
        aligned = aligned && a.step == arrivals.front().step;
      }
      if (aligned != (nb == nc)) {
        detail = "n=" + std::to_string(n) + " w=" + w + " alignment";
        return false;
      }
    }
  }
  detail = "200 strings, n in {2,3}";
  return true;
}

// ---------------------------------------------------------------------------
// criterion 7: the membership predicates agree with independent evaluators:
// a compositional segment-splitting check for the tagged concatenation
// language, and direct counting for the others.

int indep_class(const std::string& proj, char zero, char one, char marker,
                char tail) {
  const auto pos = proj.find(marker);
  if (pos == std::string::npos ||
      proj.find(marker, pos + 1) != std::string::npos)
    return 0;
  const std::string x = proj.substr(0, pos);
  const std::string y = proj.substr(pos + 1);
  for (char ch : x)
    if (ch != zero && ch != one) return 0;
  for (char ch : y)
    if (ch != tail) return 0;
  const long long n0 = std::count(x.begin(), x.end(), zero);
  const long long n1 = std::count(x.begin(), x.end(), one);
  const long long ny = static_cast<long long>(y.size());
  if (n0 == n1) return 1;
  if (ny >= 1 && n0 == n1 + ny) return 2;
  return 0;
}

std::pair<int, int> indep_classes(const std::string& w) {
  std::string pa;
  std::string pb;
  for (char ch : w) {
    if (std::string_view("a012").find(ch) != std::string_view::npos)
      pa += ch;
    if (std::string_view("b345").find(ch) != std::string_view::npos)
      pb += ch;
  }
  return {indep_class(pa, '0', '1', 'a', '2'),
          indep_class(pb, '3', '4', 'b', '5')};
}

bool indep_l1(const std::string& w) {
  for (char ch : w)
    if (std::string_view("ab012345").find(ch) == std::string_view::npos)
      return false;
  const auto [ca, cb] = indep_classes(w);
  return (ca == 1 && cb == 2) || (ca == 2 && cb == 1);
}

bool indep_l2(const std::string& w) {
  for (char ch : w)
    if (std::string_view("ab012345cde").find(ch) == std::string_view::npos)
      return false;
  std::string_view rest = w;
  bool any = false;
  while (!rest.empty()) {
    const auto c = rest.find('c');
    if (c == std::string_view::npos || c + 1 >= rest.size()) return false;
    const std::string seg(rest.substr(0, c));
    for (char ch : seg)
      if (ch == 'd' || ch == 'e') return false;
    const auto [ca, cb] = indep_classes(seg);
    if (!((ca == 1 && cb == 2) || (ca == 2 && cb == 1))) return false;
    if (rest[c + 1] != (ca == 1 ? 'd' : 'e')) return false;
    rest = rest.substr(c + 2);
    any = true;
  }
  return any;
}

bool indep_lnh(const std::string& w) {
  if (w.empty() || w.back() != 'b') return false;
  std::vector<long long> runs;
  long long run = 0;
  for (char ch : w) {
    if (ch == 'a') {
      ++run;
    } else if (ch == 'b') {
      runs.push_back(run);
      run = 0;
    } else {
      return false;
    }
  }
  if (runs.size() < 2) return false;
  for (long long r : runs)
    if (r < 1) return false;
  long long sum = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    sum += runs[i];
    if (sum == runs.front()) return true;
  }
  return false;
}

/// One random segment whose projections have the requested classes,
/// interleaved uniformly, followed by the matching tag.
std::string random_l2_segment(std::mt19937& rng, bool a_first) {
  std::uniform_int_distribution<int> small(0, 2);
  auto build = [&](char zero, char one, char marker, char tail, int cls) {
    const int n1 = small(rng);
    const int ny = cls == 2 ? 1 + small(rng) : small(rng);
    const int n0 = cls == 2 ? n1 + ny : n1;
    std::string x(n0, zero);
    x += std::string(n1, one);
    std::shuffle(x.begin(), x.end(), rng);
    return x + marker + std::string(ny, tail);
  };
  const std::string pa = build('0', '1', 'a', '2', a_first ? 1 : 2);
  const std::string pb = build('3', '4', 'b', '5', a_first ? 2 : 1);
  std::string merged;
  std::size_t i = 0;
  std::size_t j = 0;
  std::uniform_int_distribution<int> coin(0, 1);
  while (i < pa.size() || j < pb.size()) {
    const bool take_a =
        j == pb.size() || (i < pa.size() && coin(rng) == 0);
    merged += take_a ? pa[i++] : pb[j++];
  }
  return merged + "c" + (a_first ? "d" : "e");
}

bool criterion7(std::string& detail) {
  std::mt19937 rng(kSeed + 400);
  std::uniform_int_distribution<int> coin(0, 1);

  long long checked = 0;
  for (int k = 0; k < 500; ++k) {
    std::string w;
    if (k % 2 == 0) {
      w = random_string(rng, "ab012345cde", 14);
    } else {
      const int segs = 1 + k % 3;
      for (int s = 0; s < segs; ++s) w += random_l2_segment(rng, coin(rng));
      if (k % 10 == 1 && !w.empty()) {
        // corrupt one character to probe near-members
        std::uniform_int_distribution<std::size_t> at(0, w.size() - 1);
        w[at(rng)] = "ab012345cde"[k % 11];
      }
    }
    ++checked;
    if (in_l2(w) != indep_l2(w)) {
      detail = "l2 disagreement on " + w;
      return false;
    }
  }

  for (const std::string& w : all_strings("ab012345", 4)) {
    ++checked;
    if (in_l1(w) != indep_l1(w)) {
      detail = "l1 disagreement on " + w;
      return false;
    }
  }

  for (const std::string& w : all_strings("abc", 6)) {
    const long long na = std::count(w.begin(), w.end(), 'a');
    const long long nb = std::count(w.begin(), w.end(), 'b');
    const long long nc = std::count(w.begin(), w.end(), 'c');
    checked += 2;
    if (in_l3(w) != (na != nb && (na == nc || nb == nc))) {
      detail = "l3 disagreement on " + w;
      return false;
    }
    if (in_l4(w) != (na == nb && na != nc)) {
      detail = "l4 disagreement on " + w;
      return false;
    }
  }

  for (const std::string& w : all_strings("ab", 10)) {
    ++checked;
    if (in_lnh(w) != indep_lnh(w)) {
      detail = "prefix-sum disagreement on " + w;
      return false;
    }
  }

  detail = std::to_string(checked) + " comparisons";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> gate = {
      {"builtin kq1ca decides its language one-sidedly at 1/4", criterion1},
      {"one-way family decides its language at (n-1)/n", criterion2},
      {"simplify+lift preserves stochastic acceptance", criterion3},
      {"validators accept builtins and flag all mutations", criterion4},
      {"branch and density engines agree with unit trace", criterion5},
      {"path arrival steps match the closed form", criterion6},
      {"membership predicates match independent evaluators", criterion7},
  };

  int passed = 0;
  for (std::size_t i = 0; i < gate.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = gate[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << "CRITERION " << i + 1 << " " << (ok ? "PASS" : "FAIL") << " "
              << gate[i].label;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (ok) ++passed;
  }
  std::cout << "ACCEPTANCE: " << passed << "/" << gate.size() << " passed\n";
  return passed == static_cast<int>(gate.size()) ? 0 : 1;
}
