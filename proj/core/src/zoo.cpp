#include "q1ca/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "q1ca/amplitude.hpp"
#include "q1ca/validate.hpp"

namespace q1ca {

namespace {

constexpr double kOneSidedEps = 1e-12;

void quantum_shell(Machine& m, MachineKind kind) {
  m.kind = kind;
  m.counter_mode = CounterMode::blind;
  m.input_alphabet = {"a", "b", "c"};
  m.register_alphabet = {"wn", "wa", "wr"};
  m.initial_register = 0;
  m.accept_registers = {1};
  m.reject_registers = {2};
}

}  // namespace

Machine build_m1() {
  Machine m;
  m.states = {"q1", "p1"};
  quantum_shell(m, MachineKind::kq1ca);
  m.reserve_tables();

  const int q1 = 0, p1 = 1;
  const int a = 0, b = 1, c = 2, cent = m.cent(), dollar = m.dollar();
  const int wn = 0, wa = 1;
  const double half = 1.0 / std::sqrt(2.0);

  auto add = [&m](int src, int sym, int dst, int inc, int reg, double amp) {
    Target t;
    t.state = dst;
    t.increment = inc;
    t.reg = reg;
    t.amplitude = amp;
    m.add_target_all_signs(src, sym, t);
  };

  add(q1, cent, q1, 0, wn, half);
  add(q1, cent, p1, 0, wn, half);
  add(q1, a, q1, +1, wn, 1.0);
  add(q1, b, q1, 0, wn, 1.0);
  add(q1, c, q1, -1, wn, 1.0);
  add(p1, a, p1, 0, wn, 1.0);
  add(p1, b, p1, +1, wn, 1.0);
  add(p1, c, p1, -1, wn, 1.0);
  add(q1, dollar, q1, 0, wn, half);
  add(q1, dollar, p1, 0, wa, half);
  add(p1, dollar, q1, 0, wn, half);
  add(p1, dollar, p1, 0, wa, -half);

  return complete_machine(m);
}

Machine build_m2(int n) {
  if (n < 2)
    throw PreconditionError("build_m2 needs n >= 2, got " + std::to_string(n));

  Machine m;
  m.states.push_back("q1");
  // scan[j] = q<j>.1; the pause chain q<j>.k continues through
  // max(j+1, n-j+2), long enough for both the b and the c loop.
  std::vector<std::vector<int>> path(n + 1);
  for (int j = 1; j <= n; ++j) {
    const int chain = std::max(j + 1, n - j + 2);
    path[j].reserve(chain);
    for (int k = 1; k <= chain; ++k) {
      path[j].push_back(m.state_count());
      m.states.push_back("q" + std::to_string(j) + "." + std::to_string(k));
    }
  }
  std::vector<int> port(n + 1);
  for (int l = 1; l <= n; ++l) {
    port[l] = m.state_count();
    m.states.push_back("p" + std::to_string(l));
  }
  quantum_shell(m, MachineKind::oneq1ca);
  m.reserve_tables();

  const int a = 0, b = 1, c = 2, cent = m.cent(), dollar = m.dollar();
  const int wn = 0, wa = 1, wr = 2;
  const double split = 1.0 / std::sqrt(static_cast<double>(n));

  auto add = [&m](int src, int sym, int dst, int inc, HeadMove move, int reg,
                  Amplitude amp) {
    Target t;
    t.state = dst;
    t.increment = inc;
    t.move = move;
    t.reg = reg;
    t.amplitude = amp;
    m.add_target_all_signs(src, sym, t);
  };

  for (int j = 1; j <= n; ++j)
    add(0, cent, path[j][0], 0, HeadMove::right, wn, split);
  for (int j = 1; j <= n; ++j) {
    add(path[j][0], a, path[j][0], +1, HeadMove::right, wn, 1.0);

    add(path[j][0], b, path[j][1], -1, HeadMove::stay, wn, 1.0);
    for (int k = 2; k <= j; ++k)
      add(path[j][k - 1], b, path[j][k], 0, HeadMove::stay, wn, 1.0);
    add(path[j][j], b, path[j][0], 0, HeadMove::right, wn, 1.0);

    for (int k = 1; k <= n - j + 1; ++k)
      add(path[j][k - 1], c, path[j][k], 0, HeadMove::stay, wn, 1.0);
    add(path[j][n - j + 1], c, path[j][0], 0, HeadMove::right, wn, 1.0);

    for (int l = 1; l <= n; ++l)
      add(path[j][0], dollar, port[l], 0, HeadMove::stay, wn,
          split * unit_root(static_cast<long long>(j) * l, n));
  }
  for (int l = 1; l < n; ++l)
    add(port[l], dollar, port[l], 0, HeadMove::stay, wa, 1.0);
  add(port[n], dollar, port[n], 0, HeadMove::stay, wr, 1.0);

  return complete_machine(m);
}

std::string homomorphism(std::string_view w, std::string_view keep) {
  std::string out;
  out.reserve(w.size());
  for (char ch : w)
    if (keep.find(ch) != std::string_view::npos) out += ch;
  return out;
}

namespace {

struct AbcCounts {
  long long a = 0, b = 0, c = 0;
};

AbcCounts count_abc(std::string_view w, const char* who) {
  AbcCounts n;
  for (char ch : w) {
    if (ch == 'a')
      ++n.a;
    else if (ch == 'b')
      ++n.b;
    else if (ch == 'c')
      ++n.c;
    else
      throw AlphabetError(std::string(who) + ": symbol '" +
                          std::string(1, ch) + "' outside {a,b,c}");
  }
  return n;
}

}  // namespace

bool in_l3(std::string_view w) {
  const AbcCounts n = count_abc(w, "in_l3");
  return n.a != n.b && (n.a == n.c || n.b == n.c);
}

bool in_l4(std::string_view w) {
  const AbcCounts n = count_abc(w, "in_l4");
  return n.a == n.b && n.a != n.c;
}

bool in_leq(std::string_view w) {
  long long a = 0, b = 0;
  for (char ch : w) {
    if (ch == 'a')
      ++a;
    else if (ch == 'b')
      ++b;
    else
      return false;
  }
  return a == b;
}

bool in_lnh(std::string_view w) {
  if (w.empty() || w.back() != 'b') return false;
  std::vector<long long> runs;
  long long cur = 0;
  for (char ch : w) {
    if (ch == 'a') {
      ++cur;
    } else if (ch == 'b') {
      runs.push_back(cur);
      cur = 0;
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
    if (sum == runs[0]) return true;
    if (sum > runs[0]) return false;
  }
  return false;
}

namespace {

// Classifier for one x-marker-y projection: digits zero/one make up x,
// tail digits make up y. Characters outside the projection alphabet are
// skipped, so it can run over the full string.
struct Projection {
  char zero, one, tail, marker;
  long long n0 = 0, n1 = 0, ny = 0;
  bool seen = false, broken = false;

  void feed(char ch) {
    if (ch == marker) {
      broken = broken || seen;
      seen = true;
    } else if (ch == zero || ch == one) {
      if (seen)
        broken = true;
      else
        ++(ch == zero ? n0 : n1);
    } else if (ch == tail) {
      if (seen)
        ++ny;
      else
        broken = true;
    }
  }

  int cls() const {
    if (!seen || broken) return 0;
    if (n0 == n1) return 1;
    if (ny >= 1 && n0 == n1 + ny) return 2;
    return 0;
  }

  void reset() {
    n0 = n1 = ny = 0;
    seen = broken = false;
  }
};

void require_alphabet(std::string_view w, const char* allowed,
                      const char* who) {
  for (char ch : w)
    if (!std::strchr(allowed, ch))
      throw AlphabetError(std::string(who) + ": symbol '" +
                          std::string(1, ch) + "' outside {" + allowed + "}");
}

}  // namespace

L1Detail classify_l1(std::string_view w) {
  require_alphabet(w, "ab012345", "in_l1");
  Projection pa{'0', '1', '2', 'a'}, pb{'3', '4', '5', 'b'};
  for (char ch : w) {
    pa.feed(ch);
    pb.feed(ch);
  }
  return L1Detail{pa.cls(), pb.cls()};
}

bool in_l1(std::string_view w) { return classify_l1(w).member(); }

bool in_l2(std::string_view w) {
  require_alphabet(w, "ab012345cde", "in_l2");
  Projection pa{'0', '1', '2', 'a'}, pb{'3', '4', '5', 'b'};
  long long segments = 0, seg_len = 0;
  char expect_tag = 0;
  for (char ch : w) {
    if (expect_tag != 0) {
      if (ch != expect_tag) return false;
      expect_tag = 0;
      ++segments;
      seg_len = 0;
      pa.reset();
      pb.reset();
      continue;
    }
    if (ch == 'c') {
      const int ca = pa.cls(), cb = pb.cls();
      if (ca == 1 && cb == 2)
        expect_tag = 'd';
      else if (ca == 2 && cb == 1)
        expect_tag = 'e';
      else
        return false;
      continue;
    }
    if (ch == 'd' || ch == 'e') return false;
    pa.feed(ch);
    pb.feed(ch);
    ++seg_len;
  }
  return segments >= 1 && expect_tag == 0 && seg_len == 0;
}

const std::vector<LanguageOracle>& oracle_registry() {
  static const std::vector<LanguageOracle> registry = {
      {"l1", "ab012345", [](std::string_view w) { return in_l1(w); }},
      {"l2", "ab012345cde", [](std::string_view w) { return in_l2(w); }},
      {"l3", "abc", [](std::string_view w) { return in_l3(w); }},
      {"l4", "abc", [](std::string_view w) { return in_l4(w); }},
      {"leq", "ab", [](std::string_view w) { return in_leq(w); }},
      {"lnh", "ab", [](std::string_view w) { return in_lnh(w); }},
      {"all", "", [](std::string_view) { return true; }},
  };
  return registry;
}

const LanguageOracle* find_oracle(std::string_view name) {
  for (const LanguageOracle& o : oracle_registry())
    if (o.name == name) return &o;
  return nullptr;
}

std::string ClassifyReport::to_text() const {
  std::string out;
  out += "SWEEP strings=" + std::to_string(strings) +
         " members=" + std::to_string(members) + "\n";
  out += "MIN-MEMBER-ACCEPT " + format_probability(min_member_accept) + "\n";
  out += "MAX-NONMEMBER-ACCEPT " + format_probability(max_nonmember_accept) +
         "\n";
  if (one_sided)
    out += "ONE-SIDED error=" + format_probability(error_bound) + "\n";
  else
    out += "NOT-ONE-SIDED\n";
  if (separated)
    out += "CUTPOINT (" + format_probability(cutpoint_low) + "," +
           format_probability(cutpoint_high) + ")\n";
  else
    out += "NO-CUTPOINT\n";
  return out;
}

ClassifyReport classify(const Machine& m, const LanguageOracle& oracle,
                        int max_len, const EngineOptions& opts,
                        const SweepRow& row) {
  std::vector<std::string> symbols;
  if (!oracle.alphabet.empty())
    for (char ch : oracle.alphabet) symbols.emplace_back(1, ch);
  else
    symbols = m.input_alphabet;
  bool joined = true;
  for (const std::string& s : symbols) joined = joined && s.size() == 1;

  ClassifyReport rep;
  std::vector<int> digits;
  const int top_len = symbols.empty() ? 0 : max_len;
  for (int len = 0; len <= top_len; ++len) {
    digits.assign(len, 0);
    while (true) {
      std::string s;
      for (int i = 0; i < len; ++i) {
        if (!joined && !s.empty()) s += ' ';
        s += symbols[digits[i]];
      }
      const bool member = oracle.member(s);
      const RunOutcome o = run(m, s, opts);
      if (row) row(s, member, o);
      ++rep.strings;
      if (member) {
        ++rep.members;
        rep.min_member_accept = std::min(rep.min_member_accept, o.accept_prob);
      } else {
        rep.max_nonmember_accept =
            std::max(rep.max_nonmember_accept, o.accept_prob);
      }
      int pos = len - 1;
      while (pos >= 0 && digits[pos] + 1 == static_cast<int>(symbols.size()))
        digits[pos--] = 0;
      if (pos < 0) break;
      ++digits[pos];
    }
  }

  rep.one_sided = rep.max_nonmember_accept <= kOneSidedEps;
  rep.error_bound = rep.members > 0 ? 1.0 - rep.min_member_accept : 0.0;
  rep.separated = rep.max_nonmember_accept < rep.min_member_accept;
  if (rep.separated) {
    rep.cutpoint_low = rep.max_nonmember_accept;
    rep.cutpoint_high = rep.min_member_accept;
  }
  return rep;
}

}  // namespace q1ca
