#include "q1ca/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <unordered_map>

#include "q1ca/amplitude.hpp"

namespace q1ca {

void ValidationReport::add(std::string condition, std::string witness,
                           double magnitude) {
  ok = false;
  violations.push_back({std::move(condition), std::move(witness), magnitude});
}

std::string ValidationReport::to_text() const {
  if (ok) return "OK\n";
  std::string out;
  for (const auto& v : violations) {
    out += "COND " + v.condition + " WITNESS " + v.witness + " DEV " +
           format_probability(v.magnitude) + "\n";
  }
  return out;
}

namespace {

constexpr CounterSign kSigns[3] = {CounterSign::zero, CounterSign::plus,
                                   CounterSign::minus};

using SparseVec = std::unordered_map<long long, Amplitude>;

Amplitude inner(const SparseVec& a, const SparseVec& b) {
  const SparseVec& small = a.size() <= b.size() ? a : b;
  const SparseVec& big = a.size() <= b.size() ? b : a;
  Amplitude sum = 0.0;
  for (const auto& [k, v] : small) {
    auto it = big.find(k);
    if (it == big.end()) continue;
    // <a,b> = sum conj(a) b regardless of which map is iterated.
    if (&small == &a)
      sum += std::conj(v) * it->second;
    else
      sum += std::conj(it->second) * v;
  }
  return sum;
}

std::string tuple_of(std::initializer_list<std::string_view> parts) {
  std::string out = "(";
  bool first = true;
  for (auto p : parts) {
    if (!first) out += ',';
    out += p;
    first = false;
  }
  out += ')';
  return out;
}

std::string_view inc_name(int c) {
  switch (c) {
    case -1: return "-1";
    case 1: return "+1";
    default: return "0";
  }
}

void append_violation(ValidationReport& r, double dev, const char* cond,
                      std::string witness) {
  if (dev > kValidationTolerance) r.add(cond, std::move(witness), dev);
}

}  // namespace

ValidationReport check_stochastic(const Machine& m) {
  if (m.kind != MachineKind::rtp1ca)
    throw PreconditionError("check_stochastic applies to rtp1ca machines");
  ValidationReport report;
  for (int q = 0; q < m.state_count(); ++q)
    for (int sym = 0; sym < m.tape_symbol_count(); ++sym)
      for (CounterSign s : kSigns) {
        double sum = 0.0;
        for (const Target& t : m.targets(q, sym, s)) {
          double p = t.amplitude.real();
          sum += p;
          double excess = std::max(-p, p - 1.0);
          append_violation(report, excess, "prob-range",
                           tuple_of({m.states[q], m.tape_symbol_name(sym),
                                     to_string(s), m.states[t.state],
                                     inc_name(t.increment)}));
        }
        append_violation(
            report, std::abs(sum - 1.0), "prob-sum",
            tuple_of({m.states[q], m.tape_symbol_name(sym), to_string(s)}));
      }
  return report;
}

namespace {

// Per-(state, sign) column of a fixed symbol, sliced every way the
// separability conditions need.
struct Column {
  SparseVec full;         // (q', c, d, w)
  SparseVec by_c[3];      // (q', d, w), index c+1
  SparseVec by_d[2];      // (q', c, w)
  SparseVec by_cd[3][2];  // (q', w)

  void accumulate(const Machine& m, const Target& t) {
    if (t.amplitude == Amplitude{}) return;
    long long q = t.state;
    long long c = t.increment + 1;
    long long d = t.move == HeadMove::stay ? 0 : 1;
    long long w = t.reg;
    long long r = m.register_count();
    full[((q * 3 + c) * 2 + d) * r + w] += t.amplitude;
    by_c[c][(q * 2 + d) * r + w] += t.amplitude;
    by_d[d][(q * 3 + c) * r + w] += t.amplitude;
    by_cd[c][d][q * r + w] += t.amplitude;
  }
};

using ColumnBlock = std::vector<std::array<Column, 3>>;  // [state][sign]

ColumnBlock columns_for_symbol(const Machine& m, int sym) {
  ColumnBlock block(m.state_count());
  for (int q = 0; q < m.state_count(); ++q)
    for (int si = 0; si < 3; ++si)
      for (const Target& t : m.targets(q, sym, kSigns[si]))
        block[q][si].accumulate(m, t);
  return block;
}

}  // namespace

ValidationReport check_general_q(const Machine& m) {
  if (m.kind != MachineKind::rtq1ca && m.kind != MachineKind::kq1ca)
    throw PreconditionError("check_general_q applies to rtq1ca/kq1ca machines");
  if (m.simple)
    throw PreconditionError(
        "check_general_q applies to general-form machines (see as_general)");
  ValidationReport report;
  int n = m.state_count();
  for (int sym = 0; sym < m.tape_symbol_count(); ++sym) {
    ColumnBlock block = columns_for_symbol(m, sym);
    std::string sn = m.tape_symbol_name(sym);
    for (int si = 0; si < 3; ++si)
      for (int q1 = 0; q1 < n; ++q1)
        for (int q2 = q1; q2 < n; ++q2) {
          Amplitude ip = inner(block[q1][si].full, block[q2][si].full);
          double dev = std::abs(ip - (q1 == q2 ? 1.0 : 0.0));
          append_violation(report, dev, "eq1",
                           tuple_of({m.states[q1], m.states[q2], sn,
                                     to_string(kSigns[si])}));
        }
    for (int s1 = 0; s1 < 3; ++s1)
      for (int s2 = 0; s2 < 3; ++s2)
        for (int q1 = 0; q1 < n; ++q1)
          for (int q2 = 0; q2 < n; ++q2) {
            const Column& a = block[q1][s1];
            const Column& b = block[q2][s2];
            double dev2 = std::abs(inner(a.by_c[2], b.by_c[1]) +
                                   inner(a.by_c[1], b.by_c[0]));
            append_violation(report, dev2, "eq2",
                             tuple_of({m.states[q1], m.states[q2], sn,
                                       to_string(kSigns[s1]),
                                       to_string(kSigns[s2])}));
            double dev3 = std::abs(inner(a.by_c[2], b.by_c[0]));
            append_violation(report, dev3, "eq3",
                             tuple_of({m.states[q1], m.states[q2], sn,
                                       to_string(kSigns[s1]),
                                       to_string(kSigns[s2])}));
          }
  }
  return report;
}

ValidationReport check_simple_q(const Machine& m) {
  if (m.kind != MachineKind::rtq1ca && m.kind != MachineKind::kq1ca)
    throw PreconditionError("check_simple_q applies to rtq1ca/kq1ca machines");
  if (!m.simple)
    throw PreconditionError("check_simple_q applies to simple machines");
  ValidationReport report;
  int n = m.state_count();
  for (int sym = 0; sym < m.tape_symbol_count(); ++sym) {
    ColumnBlock block = columns_for_symbol(m, sym);
    std::string sn = m.tape_symbol_name(sym);
    for (int si = 0; si < 3; ++si)
      for (int q1 = 0; q1 < n; ++q1)
        for (int q2 = q1; q2 < n; ++q2) {
          // Increments are a function of (q', sym) on simple machines, so
          // summing the per-increment slices gives sum_w E^dag E exactly.
          Amplitude sum = 0.0;
          for (int c = 0; c < 3; ++c)
            sum += inner(block[q1][si].by_c[c], block[q2][si].by_c[c]);
          double dev = std::abs(sum - (q1 == q2 ? 1.0 : 0.0));
          append_violation(report, dev, "admissible",
                           tuple_of({m.states[q1], m.states[q2], sn,
                                     to_string(kSigns[si])}));
        }
  }
  return report;
}

ValidationReport check_one_way_q(const Machine& m) {
  if (m.kind != MachineKind::oneq1ca)
    throw PreconditionError("check_one_way_q applies to 1q1ca machines");
  ValidationReport report;
  int n = m.state_count();
  int syms = m.tape_symbol_count();
  std::vector<ColumnBlock> blocks(syms);
  for (int sym = 0; sym < syms; ++sym) blocks[sym] = columns_for_symbol(m, sym);

  for (int sym = 0; sym < syms; ++sym) {
    const ColumnBlock& block = blocks[sym];
    std::string sn = m.tape_symbol_name(sym);
    // Same position, same counter.
    for (int si = 0; si < 3; ++si)
      for (int q1 = 0; q1 < n; ++q1)
        for (int q2 = q1; q2 < n; ++q2) {
          double dev = std::abs(inner(block[q1][si].full, block[q2][si].full) -
                                (q1 == q2 ? 1.0 : 0.0));
          append_violation(report, dev, "c1",
                           tuple_of({m.states[q1], m.states[q2], sn,
                                     to_string(kSigns[si])}));
        }
    // Same position, counter offsets 1 and 2.
    for (int s1 = 0; s1 < 3; ++s1)
      for (int s2 = 0; s2 < 3; ++s2)
        for (int q1 = 0; q1 < n; ++q1)
          for (int q2 = 0; q2 < n; ++q2) {
            const Column& a = block[q1][s1];
            const Column& b = block[q2][s2];
            std::string witness =
                tuple_of({m.states[q1], m.states[q2], sn, to_string(kSigns[s1]),
                          to_string(kSigns[s2])});
            double dev2 = std::abs(inner(a.by_c[2], b.by_c[1]) +
                                   inner(a.by_c[1], b.by_c[0]));
            append_violation(report, dev2, "c2", witness);
            double dev3 = std::abs(inner(a.by_c[2], b.by_c[0]));
            append_violation(report, dev3, "c3", std::move(witness));
          }
  }

  // Adjacent positions: a right move out of position x against a stay at
  // x+1, so the symbols are quantified independently.
  for (int sym1 = 0; sym1 < syms; ++sym1)
    for (int sym2 = 0; sym2 < syms; ++sym2) {
      std::string s1n = m.tape_symbol_name(sym1);
      std::string s2n = m.tape_symbol_name(sym2);
      for (int q1 = 0; q1 < n; ++q1)
        for (int q2 = 0; q2 < n; ++q2) {
          for (int si = 0; si < 3; ++si) {
            const Column& a = blocks[sym1][q1][si];
            const Column& b = blocks[sym2][q2][si];
            double dev = std::abs(inner(a.by_d[1], b.by_d[0]));
            append_violation(report, dev, "c4",
                             tuple_of({m.states[q1], m.states[q2], s1n, s2n,
                                       to_string(kSigns[si])}));
          }
          for (int s1 = 0; s1 < 3; ++s1)
            for (int s2 = 0; s2 < 3; ++s2) {
              const Column& a = blocks[sym1][q1][s1];
              const Column& b = blocks[sym2][q2][s2];
              std::string witness = tuple_of(
                  {m.states[q1], m.states[q2], s1n, s2n, to_string(kSigns[s1]),
                   to_string(kSigns[s2])});
              double dev5 = std::abs(inner(a.by_cd[2][1], b.by_cd[1][0]) +
                                     inner(a.by_cd[1][1], b.by_cd[0][0]));
              append_violation(report, dev5, "c5", witness);
              double dev6 = std::abs(inner(a.by_cd[0][1], b.by_cd[1][0]) +
                                     inner(a.by_cd[1][1], b.by_cd[2][0]));
              append_violation(report, dev6, "c6", witness);
              double dev7 = std::abs(inner(a.by_cd[2][1], b.by_cd[0][0]));
              append_violation(report, dev7, "c7", witness);
              double dev8 = std::abs(inner(a.by_cd[0][1], b.by_cd[2][0]));
              append_violation(report, dev8, "c8", std::move(witness));
            }
        }
    }
  return report;
}

namespace {

// Coordinates for comparing one (state, symbol) row across counter signs.
long long blind_key(const Machine& m, const Target& t) {
  long long rc = std::max(1, m.register_count());
  return ((static_cast<long long>(t.state) * 3 + t.increment + 1) * 2 +
          (t.move == HeadMove::stay ? 0 : 1)) *
             rc +
         std::max(0, t.reg);
}

std::string blind_witness(const Machine& m, int q, int sym, CounterSign s,
                          long long key) {
  long long rc = std::max(1, m.register_count());
  int qi = static_cast<int>(key / (6 * rc));
  int c = static_cast<int>((key / (2 * rc)) % 3) - 1;
  HeadMove d = (key / rc) % 2 == 0 ? HeadMove::stay : HeadMove::right;
  int w = static_cast<int>(key % rc);
  std::string witness = "(" + m.states[q] + "," + m.tape_symbol_name(sym) +
                        "," + std::string(to_string(s)) + "," + m.states[qi] +
                        "," + std::string(inc_name(c));
  if (m.kind == MachineKind::oneq1ca)
    witness += "," + std::string(to_string(d));
  if (m.is_quantum()) witness += "," + m.register_alphabet[w];
  return witness + ")";
}

}  // namespace

ValidationReport check_blind(const Machine& m) {
  if (m.counter_mode != CounterMode::blind)
    throw PreconditionError("check_blind applies to blind-counter machines");
  ValidationReport report;
  for (int q = 0; q < m.state_count(); ++q)
    for (int sym = 0; sym < m.tape_symbol_count(); ++sym) {
      SparseVec rows[3];
      for (int si = 0; si < 3; ++si)
        for (const Target& t : m.targets(q, sym, kSigns[si]))
          rows[si][blind_key(m, t)] += t.amplitude;
      for (int si = 1; si < 3; ++si) {
        for (const auto& [key, reference] : rows[0]) {
          auto it = rows[si].find(key);
          Amplitude other = it == rows[si].end() ? Amplitude{} : it->second;
          double dev = std::abs(reference - other);
          if (dev > 0.0)
            report.add("blind", blind_witness(m, q, sym, kSigns[si], key), dev);
        }
        for (const auto& [key, value] : rows[si]) {
          if (rows[0].count(key)) continue;
          double dev = std::abs(value);
          if (dev > 0.0)
            report.add("blind", blind_witness(m, q, sym, kSigns[si], key), dev);
        }
      }
    }
  return report;
}

ValidationReport validate_machine(const Machine& m) {
  ValidationReport report;
  auto merge = [&report](const ValidationReport& r) {
    if (!r.ok) report.ok = false;
    report.violations.insert(report.violations.end(), r.violations.begin(),
                             r.violations.end());
  };
  switch (m.kind) {
    case MachineKind::rtp1ca:
      merge(check_stochastic(m));
      break;
    case MachineKind::rtq1ca:
    case MachineKind::kq1ca:
      merge(m.simple ? check_simple_q(m) : check_general_q(m));
      break;
    case MachineKind::oneq1ca:
      merge(check_one_way_q(m));
      break;
  }
  if (m.counter_mode == CounterMode::blind) merge(check_blind(m));
  return report;
}

namespace {

double norm_squared(const std::vector<Amplitude>& v) {
  double total = 0.0;
  for (const Amplitude& a : v) total += std::norm(a);
  return total;
}

Amplitude dense_inner(const std::vector<Amplitude>& a,
                      const std::vector<Amplitude>& b) {
  Amplitude sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

// Orthonormal extension: projects each standard basis vector (in index
// order) against everything placed so far, keeping survivors.
std::vector<std::vector<Amplitude>> gram_schmidt_extend(
    std::vector<std::vector<Amplitude>> basis, int dimension, int needed) {
  std::vector<std::vector<Amplitude>> fresh;
  for (int cand = 0; cand < dimension && static_cast<int>(fresh.size()) < needed;
       ++cand) {
    std::vector<Amplitude> r(dimension, Amplitude{});
    r[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : basis) {
        Amplitude overlap = dense_inner(u, r);
        for (int i = 0; i < dimension; ++i) r[i] -= overlap * u[i];
      }
    double n2 = norm_squared(r);
    if (n2 < 1e-12) continue;
    double inv = 1.0 / std::sqrt(n2);
    for (auto& x : r) x *= inv;
    fresh.push_back(r);
    basis.push_back(std::move(r));
  }
  if (static_cast<int>(fresh.size()) < needed)
    throw CompletionError("could not extend the supplied columns to a unitary");
  return fresh;
}

}  // namespace

ColumnMatrix complete_unitary(
    const std::vector<std::pair<int, std::vector<Amplitude>>>& columns,
    int dimension) {
  if (dimension <= 0) throw CompletionError("dimension must be positive");
  std::vector<bool> present(dimension, false);
  ColumnMatrix result(dimension);
  for (const auto& [idx, col] : columns) {
    if (idx < 0 || idx >= dimension)
      throw CompletionError("column index " + std::to_string(idx) +
                            " out of range");
    if (present[idx])
      throw CompletionError("column index " + std::to_string(idx) +
                            " supplied twice");
    if (static_cast<int>(col.size()) != dimension)
      throw CompletionError("column " + std::to_string(idx) +
                            " has wrong dimension");
    present[idx] = true;
    result[idx] = col;
  }
  for (const auto& [i1, c1] : columns)
    for (const auto& [i2, c2] : columns) {
      double expected = i1 == i2 ? 1.0 : 0.0;
      double dev = std::abs(dense_inner(c1, c2) - expected);
      if (dev > kValidationTolerance)
        throw CompletionError("supplied columns " + std::to_string(i1) +
                              " and " + std::to_string(i2) +
                              " are not orthonormal (deviation " +
                              format_probability(dev) + ")");
    }

  std::vector<std::vector<Amplitude>> basis;
  basis.reserve(columns.size());
  for (const auto& [idx, col] : columns) basis.push_back(col);
  int needed = dimension - static_cast<int>(columns.size());
  auto fresh = gram_schmidt_extend(std::move(basis), dimension, needed);

  std::size_t next = 0;
  for (int idx = 0; idx < dimension; ++idx) {
    if (present[idx]) continue;
    result[idx] = std::move(fresh[next++]);
  }
  return result;
}

Machine complete_machine(const Machine& m) {
  if (!m.is_quantum())
    throw PreconditionError("complete_machine applies to quantum machines");
  Machine out = m;
  int n = m.state_count();
  int rc = m.register_count();
  bool one_way = m.kind == MachineKind::oneq1ca;
  bool blind = m.counter_mode == CounterMode::blind;

  // Head direction each state is entered with; stay for untouched states.
  std::vector<HeadMove> dir(n, HeadMove::stay);
  if (one_way) {
    std::vector<bool> dir_set(n, false);
    for (int q = 0; q < n; ++q)
      for (int sym = 0; sym < m.tape_symbol_count(); ++sym)
        for (CounterSign s : kSigns)
          for (const Target& t : m.targets(q, sym, s)) {
            if (t.amplitude == Amplitude{}) continue;
            if (dir_set[t.state] && dir[t.state] != t.move)
              throw CompletionError(
                  "state '" + m.states[t.state] +
                  "' is entered with both head directions; cannot complete");
            dir[t.state] = t.move;
            dir_set[t.state] = true;
          }
  }

  // Candidate register order: the neutral initial register first.
  std::vector<int> reg_order;
  reg_order.push_back(m.initial_register);
  for (int w = 0; w < rc; ++w)
    if (w != m.initial_register) reg_order.push_back(w);
  std::vector<int> reg_pos(rc, 0);
  for (int i = 0; i < rc; ++i) reg_pos[reg_order[i]] = i;

  for (int sym = 0; sym < m.tape_symbol_count(); ++sym) {
    // Counter increment each state is entered with on this symbol.
    std::vector<int> cinc(n, 0);
    std::vector<bool> cinc_set(n, false);
    if (m.simple) {
      for (int q = 0; q < n; ++q) {
        cinc[q] = m.dc_increment(q, sym);
        cinc_set[q] = true;
      }
    } else {
      for (int q = 0; q < n; ++q)
        for (CounterSign s : kSigns)
          for (const Target& t : m.targets(q, sym, s)) {
            if (t.amplitude == Amplitude{}) continue;
            if (cinc_set[t.state] && cinc[t.state] != t.increment)
              throw CompletionError(
                  "state '" + m.states[t.state] + "' is entered with several "
                  "counter increments on symbol '" + m.tape_symbol_name(sym) +
                  "'; cannot complete");
            cinc[t.state] = t.increment;
            cinc_set[t.state] = true;
          }
    }

    int dimension = n * rc;
    auto coord = [&](int state, int reg) { return reg_pos[reg] * n + state; };

    if (blind) {
      // A shared completion is only sound when the existing sign rows agree.
      for (int q = 0; q < n; ++q) {
        SparseVec rows[3];
        for (int si = 0; si < 3; ++si)
          for (const Target& t : m.targets(q, sym, kSigns[si]))
            rows[si][blind_key(m, t)] += t.amplitude;
        for (int si = 1; si < 3; ++si) {
          bool same = rows[si].size() == rows[0].size();
          for (const auto& [key, value] : rows[0]) {
            auto it = rows[si].find(key);
            if (it == rows[si].end() || it->second != value) same = false;
          }
          if (!same)
            throw CompletionError("blind machine rows for state '" +
                                  m.states[q] + "' on symbol '" +
                                  m.tape_symbol_name(sym) +
                                  "' differ across counter signs");
        }
      }
    }

    for (int si = 0; si < (blind ? 1 : 3); ++si) {
      CounterSign sign = kSigns[si];
      std::vector<std::vector<Amplitude>> basis;
      std::vector<int> missing;
      for (int q = 0; q < n; ++q) {
        std::vector<Amplitude> col(dimension, Amplitude{});
        bool nonzero = false;
        for (const Target& t : m.targets(q, sym, sign)) {
          if (t.amplitude == Amplitude{}) continue;
          col[coord(t.state, t.reg)] += t.amplitude;
          nonzero = true;
        }
        if (!nonzero) {
          missing.push_back(q);
        } else {
          basis.push_back(std::move(col));
        }
      }
      // Specified columns must already be orthonormal.
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
          double expected = i == j ? 1.0 : 0.0;
          double dev = std::abs(dense_inner(basis[i], basis[j]) - expected);
          if (dev > kValidationTolerance)
            throw CompletionError(
                "specified columns on symbol '" + m.tape_symbol_name(sym) +
                "' sign " + std::string(to_string(sign)) +
                " are not orthonormal (deviation " + format_probability(dev) +
                ")");
        }
      if (missing.empty()) continue;

      auto fresh = gram_schmidt_extend(std::move(basis), dimension,
                                       static_cast<int>(missing.size()));
      for (std::size_t i = 0; i < missing.size(); ++i) {
        int q = missing[i];
        for (int pos = 0; pos < dimension; ++pos) {
          const Amplitude& a = fresh[i][pos];
          if (a == Amplitude{}) continue;
          Target t;
          t.state = pos % n;
          t.reg = reg_order[pos / n];
          t.increment = cinc[t.state];
          t.move = one_way ? dir[t.state] : HeadMove::right;
          t.amplitude = a;
          if (blind)
            out.add_target_all_signs(q, sym, t);
          else
            out.add_target(q, sym, sign, t);
        }
      }
    }
  }
  out.check_structure();
  return out;
}

}  // namespace q1ca
