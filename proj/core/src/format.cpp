#include "q1ca/format.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "q1ca/amplitude.hpp"
#include "q1ca/validate.hpp"

namespace q1ca {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)),
                   static_cast<int>(start) + 1});
  }
  return out;
}

struct Parser {
  Machine m;
  bool has_kind = false;
  bool has_counter = false;
  bool has_simple = false;
  bool has_states = false;
  bool has_input = false;
  bool has_register = false;
  bool has_init_register = false;
  bool has_accept = false;
  bool has_reject = false;
  bool tables_ready = false;
  bool auto_complete = false;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg, int column = 0) const {
    throw ParseError(msg, line_no, column);
  }

  void require_kind() const {
    if (!has_kind) fail("'kind' must be declared first");
  }

  void freeze_tables() {
    if (tables_ready) return;
    require_kind();
    if (!has_states) fail("'states' must be declared before transitions");
    if (!has_input) fail("'input' must be declared before transitions");
    if (m.is_quantum() && !has_register)
      fail("'register' must be declared before transitions");
    m.reserve_tables();
    tables_ready = true;
  }

  void declaration_only(const char* what) const {
    if (tables_ready)
      fail(std::string("'") + what + "' must precede dc/trans lines");
  }

  void check_identifier(const Token& t, bool input_symbol) {
    if (t.text == "->" || t.text == ":" || t.text == "*")
      fail("'" + t.text + "' cannot be used as an identifier", t.column);
    if (input_symbol &&
        (t.text == "CENT" || t.text == "DOLLAR" || t.text == "any"))
      fail("'" + t.text + "' is reserved and cannot name an input symbol",
           t.column);
  }

  void check_fresh(const Token& t, const std::vector<std::string>& list,
                   const char* what) {
    for (const std::string& have : list)
      if (have == t.text)
        fail(std::string("duplicate ") + what + " '" + t.text + "'",
             t.column);
  }

  int resolve_state(const Token& t) const {
    int q = m.state_index(t.text);
    if (q < 0) fail("unknown state '" + t.text + "'", t.column);
    return q;
  }

  int resolve_register(const Token& t) const {
    int r = m.register_index(t.text);
    if (r < 0) fail("unknown register '" + t.text + "'", t.column);
    return r;
  }

  int resolve_tape_symbol(const Token& t) const {
    if (t.text == "CENT") return m.cent();
    if (t.text == "DOLLAR") return m.dollar();
    int sym = m.input_index(t.text);
    if (sym < 0) fail("unknown input symbol '" + t.text + "'", t.column);
    return sym;
  }

  int resolve_increment(const Token& t) const {
    if (t.text == "-1") return -1;
    if (t.text == "0") return 0;
    if (t.text == "+1" || t.text == "1") return 1;
    fail("counter increment must be -1, 0, or +1, got '" + t.text + "'",
         t.column);
  }

  Amplitude resolve_amplitude(const Token& t) const {
    try {
      if (m.kind == MachineKind::rtp1ca)
        return {parse_probability(t.text), 0.0};
      return parse_amplitude(t.text);
    } catch (const ParseError& e) {
      throw ParseError(e.raw, line_no,
                       t.column + (e.column > 0 ? e.column - 1 : 0));
    }
  }

  void handle(const std::vector<Token>& tok);
  void handle_dc(const std::vector<Token>& tok);
  void handle_trans(const std::vector<Token>& tok);
  Machine finish();
};

void Parser::handle(const std::vector<Token>& tok) {
  const std::string& key = tok[0].text;

  if (key == "kind") {
    if (has_kind) fail("duplicate 'kind' line");
    if (tok.size() != 2) fail("usage: kind rtp1ca|rtq1ca|kq1ca|1q1ca");
    auto k = machine_kind_from(tok[1].text);
    if (!k) fail("unknown machine kind '" + tok[1].text + "'", tok[1].column);
    m.kind = *k;
    has_kind = true;
  } else if (key == "counter") {
    if (has_counter) fail("duplicate 'counter' line");
    if (tok.size() != 2) fail("usage: counter checked|blind");
    auto c = counter_mode_from(tok[1].text);
    if (!c) fail("unknown counter mode '" + tok[1].text + "'", tok[1].column);
    m.counter_mode = *c;
    has_counter = true;
  } else if (key == "simple") {
    declaration_only("simple");
    if (has_simple) fail("duplicate 'simple' line");
    if (tok.size() != 2 || (tok[1].text != "true" && tok[1].text != "false"))
      fail("usage: simple true|false");
    m.simple = tok[1].text == "true";
    has_simple = true;
  } else if (key == "states") {
    declaration_only("states");
    if (has_states) fail("duplicate 'states' line");
    if (tok.size() < 2) fail("'states' needs at least one state");
    for (std::size_t i = 1; i < tok.size(); ++i) {
      check_identifier(tok[i], false);
      check_fresh(tok[i], m.states, "state");
      m.states.push_back(tok[i].text);
    }
    has_states = true;
  } else if (key == "input") {
    declaration_only("input");
    if (has_input) fail("duplicate 'input' line");
    for (std::size_t i = 1; i < tok.size(); ++i) {
      check_identifier(tok[i], true);
      check_fresh(tok[i], m.input_alphabet, "input symbol");
      m.input_alphabet.push_back(tok[i].text);
    }
    has_input = true;
  } else if (key == "register") {
    declaration_only("register");
    require_kind();
    if (m.kind == MachineKind::rtp1ca)
      fail("rtp1ca machines have no registers");
    if (has_register) fail("duplicate 'register' line");
    if (tok.size() < 2) fail("'register' needs at least one symbol");
    for (std::size_t i = 1; i < tok.size(); ++i) {
      check_identifier(tok[i], false);
      check_fresh(tok[i], m.register_alphabet, "register symbol");
      m.register_alphabet.push_back(tok[i].text);
    }
    has_register = true;
  } else if (key == "init-register") {
    require_kind();
    if (!has_register) fail("'register' must precede 'init-register'");
    if (has_init_register) fail("duplicate 'init-register' line");
    if (tok.size() != 2) fail("usage: init-register <id>");
    m.initial_register = resolve_register(tok[1]);
    has_init_register = true;
  } else if (key == "accept") {
    require_kind();
    if (has_accept) fail("duplicate 'accept' line");
    if (m.kind == MachineKind::rtp1ca) {
      if (!has_states) fail("'states' must precede 'accept'");
      for (std::size_t i = 1; i < tok.size(); ++i)
        m.accept_states.insert(resolve_state(tok[i]));
    } else {
      if (!has_register) fail("'register' must precede 'accept'");
      for (std::size_t i = 1; i < tok.size(); ++i)
        m.accept_registers.insert(resolve_register(tok[i]));
    }
    has_accept = true;
  } else if (key == "reject") {
    require_kind();
    if (has_reject) fail("duplicate 'reject' line");
    if (m.kind == MachineKind::rtp1ca)
      fail("rtp1ca machines have no reject registers");
    if (!has_register) fail("'register' must precede 'reject'");
    for (std::size_t i = 1; i < tok.size(); ++i)
      m.reject_registers.insert(resolve_register(tok[i]));
    has_reject = true;
  } else if (key == "dc") {
    handle_dc(tok);
  } else if (key == "trans") {
    handle_trans(tok);
  } else if (key == "auto-complete") {
    require_kind();
    if (m.kind == MachineKind::rtp1ca)
      fail("'auto-complete unitary' applies to quantum machines");
    if (tok.size() != 2 || tok[1].text != "unitary")
      fail("usage: auto-complete unitary");
    auto_complete = true;
  } else {
    fail("unknown directive '" + key + "'", tok[0].column);
  }
}

void Parser::handle_dc(const std::vector<Token>& tok) {
  freeze_tables();
  if (!m.simple) fail("'dc' lines require 'simple true'");
  if (tok.size() != 4) fail("usage: dc <state> <tapesym|*> <-1|0|+1>");
  int q = resolve_state(tok[1]);
  int inc = resolve_increment(tok[3]);
  std::vector<int> syms;
  if (tok[2].text == "*") {
    for (int s = 0; s < m.tape_symbol_count(); ++s) syms.push_back(s);
  } else {
    syms.push_back(resolve_tape_symbol(tok[2]));
  }
  for (int s : syms) {
    int prev = m.dc_increment(q, s);
    if (prev != Machine::kNoIncrement && prev != inc)
      fail("conflicting dc value for (" + tok[1].text + ", " +
               m.tape_symbol_name(s) + ")",
           tok[3].column);
    m.set_dc(q, s, inc);
  }
}

void Parser::handle_trans(const std::vector<Token>& tok) {
  freeze_tables();
  bool one_way = m.kind == MachineKind::oneq1ca;
  bool quantum = m.is_quantum();
  std::size_t expect = 9 + (quantum ? 1 : 0) + (one_way ? 1 : 0);
  if (tok.size() != expect) {
    std::string usage = "usage: trans <q> <sym> <sign> -> <q'> <inc> ";
    if (one_way) usage += "<stay|right> ";
    if (quantum) usage += "<reg> ";
    usage += ": <amplitude>";
    fail(usage);
  }
  if (tok[4].text != "->") fail("expected '->'", tok[4].column);
  if (tok[expect - 2].text != ":")
    fail("expected ':' before the amplitude", tok[expect - 2].column);

  int q = resolve_state(tok[1]);
  int sym = resolve_tape_symbol(tok[2]);

  std::vector<CounterSign> signs;
  if (tok[3].text == "any") {
    signs = {CounterSign::zero, CounterSign::plus, CounterSign::minus};
  } else {
    auto s = counter_sign_from(tok[3].text);
    if (!s)
      fail("counter sign must be zero|plus|minus|any, got '" + tok[3].text +
               "'",
           tok[3].column);
    signs = {*s};
  }

  Target t;
  t.state = resolve_state(tok[5]);
  t.increment = resolve_increment(tok[6]);
  std::size_t next = 7;
  if (one_way) {
    if (tok[next].text == "stay")
      t.move = HeadMove::stay;
    else if (tok[next].text == "right")
      t.move = HeadMove::right;
    else
      fail("head move must be stay|right, got '" + tok[next].text + "'",
           tok[next].column);
    ++next;
  }
  if (quantum) {
    t.reg = resolve_register(tok[next]);
    ++next;
  }
  t.amplitude = resolve_amplitude(tok[expect - 1]);

  for (CounterSign s : signs) m.add_target(q, sym, s, t);
}

Machine Parser::finish() {
  if (!has_kind) fail("missing 'kind' line");
  if (!has_states) fail("missing 'states' line");
  if (!has_input) fail("missing 'input' line");
  if (m.is_quantum()) {
    if (!has_register) fail("missing 'register' line");
    if (!has_init_register) fail("missing 'init-register' line");
  }
  if (!tables_ready) m.reserve_tables();
  m.check_structure();
  if (auto_complete) m = complete_machine(m);
  return m;
}

}  // namespace

Machine parse_machine(std::string_view text) {
  Parser p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++p.line_no;
    auto tok = tokenize(line);
    if (!tok.empty()) p.handle(tok);
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return p.finish();
}

Machine parse_machine_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

namespace {

bool same_target(const Target& a, const Target& b) {
  return a.state == b.state && a.increment == b.increment && a.move == b.move &&
         a.reg == b.reg && a.amplitude == b.amplitude;
}

bool same_targets(const std::vector<Target>& a, const std::vector<Target>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_target(a[i], b[i])) return false;
  return true;
}

std::string increment_token(int inc) {
  if (inc < 0) return "-1";
  return inc > 0 ? "+1" : "0";
}

void emit_trans(std::string& out, const Machine& m, int q, int sym,
                std::string_view sign, const Target& t) {
  out += "trans ";
  out += m.states[q];
  out += ' ';
  out += m.tape_symbol_name(sym);
  out += ' ';
  out += sign;
  out += " -> ";
  out += m.states[t.state];
  out += ' ';
  out += increment_token(t.increment);
  if (m.kind == MachineKind::oneq1ca) {
    out += ' ';
    out += to_string(t.move);
  }
  if (t.reg >= 0) {
    out += ' ';
    out += m.register_alphabet[t.reg];
  }
  out += " : ";
  out += format_amplitude(t.amplitude);
  out += '\n';
}

}  // namespace

std::string serialize_machine(const Machine& m) {
  std::string out;
  out += "kind ";
  out += to_string(m.kind);
  out += "\ncounter ";
  out += to_string(m.counter_mode);
  out += "\nsimple ";
  out += m.simple ? "true" : "false";
  out += "\nstates";
  for (const auto& s : m.states) out += ' ' + s;
  out += "\ninput";
  for (const auto& s : m.input_alphabet) out += ' ' + s;
  out += '\n';
  if (m.is_quantum()) {
    out += "register";
    for (const auto& s : m.register_alphabet) out += ' ' + s;
    out += "\ninit-register ";
    out += m.register_alphabet[m.initial_register];
    out += '\n';
    if (!m.accept_registers.empty()) {
      out += "accept";
      for (int r : m.accept_registers) out += ' ' + m.register_alphabet[r];
      out += '\n';
    }
    if (!m.reject_registers.empty()) {
      out += "reject";
      for (int r : m.reject_registers) out += ' ' + m.register_alphabet[r];
      out += '\n';
    }
  } else if (!m.accept_states.empty()) {
    out += "accept";
    for (int q : m.accept_states) out += ' ' + m.states[q];
    out += '\n';
  }

  if (m.simple) {
    for (int q = 0; q < m.state_count(); ++q) {
      bool uniform = true;
      for (int sym = 1; sym < m.tape_symbol_count(); ++sym)
        if (m.dc_increment(q, sym) != m.dc_increment(q, 0)) uniform = false;
      if (uniform) {
        out += "dc " + m.states[q] + " * " +
               increment_token(m.dc_increment(q, 0)) + '\n';
      } else {
        for (int sym = 0; sym < m.tape_symbol_count(); ++sym)
          out += "dc " + m.states[q] + ' ' + m.tape_symbol_name(sym) + ' ' +
                 increment_token(m.dc_increment(q, sym)) + '\n';
      }
    }
  }

  for (int q = 0; q < m.state_count(); ++q)
    for (int sym = 0; sym < m.tape_symbol_count(); ++sym) {
      const auto& zero = m.targets(q, sym, CounterSign::zero);
      const auto& plus = m.targets(q, sym, CounterSign::plus);
      const auto& minus = m.targets(q, sym, CounterSign::minus);
      if (same_targets(zero, plus) && same_targets(zero, minus)) {
        for (const Target& t : zero) emit_trans(out, m, q, sym, "any", t);
      } else {
        for (const Target& t : zero) emit_trans(out, m, q, sym, "zero", t);
        for (const Target& t : plus) emit_trans(out, m, q, sym, "plus", t);
        for (const Target& t : minus) emit_trans(out, m, q, sym, "minus", t);
      }
    }
  return out;
}

}  // namespace q1ca
