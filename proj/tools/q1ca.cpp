#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "q1ca/amplitude.hpp"
#include "q1ca/format.hpp"
#include "q1ca/sim.hpp"
#include "q1ca/transform.hpp"
#include "q1ca/validate.hpp"
#include "q1ca/zoo.hpp"

namespace {

q1ca::Machine load_machine(const std::string& path) {
  if (path == "-") {
    std::ostringstream text;
    text << std::cin.rdbuf();
    return q1ca::parse_machine(text.str());
  }
  return q1ca::parse_machine_file(path);
}

int report_validation(const q1ca::ValidationReport& rep) {
  std::cout << rep.to_text();
  return rep.ok ? 0 : 1;
}

int cmd_validate(const std::string& path) {
  return report_validation(q1ca::validate_machine(load_machine(path)));
}

int cmd_run(const std::string& path, const std::string& input,
            const q1ca::EngineOptions& opts) {
  const q1ca::Machine m = load_machine(path);
  const q1ca::ValidationReport rep = q1ca::validate_machine(m);
  if (!rep.ok) return report_validation(rep);
  std::cout << q1ca::format_outcome(q1ca::run(m, input, opts)) << "\n";
  return 0;
}

int cmd_compile(const std::string& mode, const std::string& path) {
  const q1ca::Machine m = load_machine(path);
  const q1ca::Machine out =
      mode == "simplify" ? q1ca::simplify_rtp1ca(m) : q1ca::lift_p_to_q(m);
  std::cout << q1ca::serialize_machine(out);
  return 0;
}

int cmd_zoo(const std::string& name, int n, bool n_given) {
  if (name == "m1") {
    std::cout << q1ca::serialize_machine(q1ca::build_m1());
    return 0;
  }
  if (!n_given) throw q1ca::PreconditionError("zoo m2 needs --n");
  std::cout << q1ca::serialize_machine(q1ca::build_m2(n));
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& oracle_name,
              int max_len, const std::string& alphabet, bool summary) {
  const q1ca::Machine m = load_machine(path);
  const q1ca::ValidationReport rep = q1ca::validate_machine(m);
  if (!rep.ok) return report_validation(rep);

  const q1ca::LanguageOracle* found = q1ca::find_oracle(oracle_name);
  if (!found)
    throw q1ca::PreconditionError("unknown oracle '" + oracle_name + "'");
  q1ca::LanguageOracle oracle = *found;
  if (!alphabet.empty()) oracle.alphabet = alphabet;

  std::vector<std::tuple<std::string, bool, double>> rows;
  q1ca::SweepRow sink;
  if (!summary)
    sink = [&rows](const std::string& w, bool member,
                   const q1ca::RunOutcome& o) {
      rows.emplace_back(w, member, o.accept_prob);
    };

  const q1ca::ClassifyReport report =
      q1ca::classify(m, oracle, max_len, {}, sink);

  std::sort(rows.begin(), rows.end());
  for (const auto& [w, member, accept] : rows)
    std::cout << (w.empty() ? "\"\"" : w) << " "
              << (member ? "member" : "nonmember") << " "
              << q1ca::format_probability(accept) << "\n";
  std::cout << report.to_text();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-counter automaton toolkit"};
  app.require_subcommand(1);

  std::string path, input, mode, zoo_name, oracle_name, alphabet;
  std::string engine = "branch";
  long long max_steps = 0;
  int branch_cap = 10000, zoo_n = 0, max_len = 0;
  bool summary = false;

  CLI::App* validate =
      app.add_subcommand("validate", "Check machine well-formedness");
  validate->add_option("file", path, "machine file, or - for stdin")
      ->required();

  CLI::App* run = app.add_subcommand("run", "Simulate the machine on one input");
  run->add_option("file", path, "machine file, or - for stdin")->required();
  run->add_option("input", input, "input string over the machine's alphabet");
  run->add_option("--engine", engine, "branch or density")
      ->check(CLI::IsMember({"branch", "density"}));
  run->add_option("--max-steps", max_steps, "step cap, 0 = automatic");
  run->add_option("--branch-cap", branch_cap, "live branch ceiling");

  CLI::App* compile =
      app.add_subcommand("compile", "Transform a stochastic machine");
  compile->add_option("mode", mode, "simplify or lift")
      ->required()
      ->check(CLI::IsMember({"simplify", "lift"}));
  compile->add_option("file", path, "machine file, or - for stdin")
      ->required();

  CLI::App* zoo = app.add_subcommand("zoo", "Emit a builtin machine");
  zoo->add_option("name", zoo_name, "m1 or m2")
      ->required()
      ->check(CLI::IsMember({"m1", "m2"}));
  CLI::Option* n_opt = zoo->add_option("--n", zoo_n, "path count for m2");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run every string up to a length cap");
  sweep->add_option("file", path, "machine file, or - for stdin")->required();
  sweep->add_option("--oracle", oracle_name, "l1 l2 l3 l4 leq lnh all")
      ->required();
  sweep->add_option("--max-len", max_len, "maximum string length")->required();
  sweep->add_option("--alphabet", alphabet,
                    "override enumeration symbols (one per character)");
  sweep->add_flag("--summary", summary, "suppress per-string rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (run->parsed()) {
      q1ca::EngineOptions opts;
      opts.engine = engine == "density"
                        ? q1ca::EngineOptions::Engine::density
                        : q1ca::EngineOptions::Engine::branch;
      opts.max_steps = max_steps;
      opts.branch_cap = branch_cap;
      return cmd_run(path, input, opts);
    }
    if (compile->parsed()) return cmd_compile(mode, path);
    if (zoo->parsed()) return cmd_zoo(zoo_name, zoo_n, n_opt->count() > 0);
    if (sweep->parsed())
      return cmd_sweep(path, oracle_name, max_len, alphabet, summary);
  } catch (const q1ca::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
