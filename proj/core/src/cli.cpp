#include "hornify/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hornify/corpus.hpp"
#include "hornify/marking.hpp"
#include "hornify/psi.hpp"
#include "hornify/reasoner.hpp"
#include "hornify/transpose.hpp"
#include "hornify/xi.hpp"

namespace hornify {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitNotMarkable = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitDisagree = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

Ontology load_ontology(const std::string& path) {
  return parse_ontology(read_file(path));
}

// Translations other than the direct one require the restricted axiom forms;
// general inclusions are normalized on the fly with a note.
Ontology normal_for_translation(const Ontology& o) {
  if (is_normal_form(o)) return o;
  std::cerr << "note: input uses general inclusions; normalizing first\n";
  return normalize_ontology(o);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::size_t default_budget() {
  if (const char* env = std::getenv("HORNIFY_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return (std::size_t)v;
    std::cerr << "warning: ignoring malformed HORNIFY_BUDGET='" << env
              << "'\n";
  }
  return SatOptions{}.atomBudget;
}

std::string fresh_name_comments(const FreshNames& names) {
  std::string out;
  for (const auto& [role, fn] : names.successorRoles)
    out += "# successor role " + role + " tracks " + fn + "\n";
  for (const auto& [alias, role] : names.inverseAliases)
    out += "# role " + alias + " is equivalent to Inv(" + role + ")\n";
  for (const auto& [u, members] : names.unionRoles) {
    out += "# role " + u + " contains";
    for (const auto& m : members) out += " " + m;
    out += "\n";
  }
  for (const auto& [name, pred] : names.complementConcepts)
    out += "# concept " + name + " marks the complement of " + pred + "\n";
  return out;
}

int cmd_translate(const std::string& in, const std::string& outPath,
                  const std::string& mode) {
  const Ontology o = load_ontology(in);
  Program p;
  if (mode == "pi") {
    p = pi_translate(o);
  } else {
    p = xi_translate(normal_for_translation(o));
  }
  write_output(outPath, serialize_program(p));
  return kExitOk;
}

Program load_program_for_marking(const std::string& in) {
  if (ends_with(in, ".rules")) return parse_program(read_file(in));
  return xi_translate(normal_for_translation(load_ontology(in)));
}

int cmd_mark(const std::string& in, bool all, bool minimal) {
  const Program p = load_program_for_marking(in);
  if (all) {
    const auto markings = enumerate_markings(p);
    if (markings.empty()) {
      std::cout << "NOT-MARKABLE\n";
      return kExitNotMarkable;
    }
    for (const auto& m : markings) std::cout << marking_text(m) << "\n";
    return kExitOk;
  }
  auto m = find_marking(p);
  if (!m) {
    std::cout << "NOT-MARKABLE\n";
    return kExitNotMarkable;
  }
  std::cout << marking_text(minimal ? minimize_marking(p, *m) : *m) << "\n";
  return kExitOk;
}

int cmd_transpose(const std::string& in, const std::string& outPath,
                  const std::string& markingText) {
  const Program p = parse_program(read_file(in));
  const Marking m = parse_marking(markingText, p);
  const Program t = transpose_program(p, m);
  write_output(outPath, serialize_program(t));
  return kExitOk;
}

int cmd_rewrite(const std::string& in, const std::string& outPath,
                bool renormalize) {
  const Ontology o = load_ontology(in);
  const RewriteOutcome rw =
      rewrite_ontology(normal_for_translation(o), renormalize);
  if (!rw.markable) {
    std::cerr << "NOT-MARKABLE\n";
    return kExitNotMarkable;
  }
  std::string out = "# marking: " + marking_text(rw.marking) + "\n";
  out += fresh_name_comments(rw.names);
  out += serialize_ontology(rw.rewritten);
  write_output(outPath, out);
  return kExitOk;
}

void print_leg(const char* name, const SatReport& rep, bool witness) {
  std::cout << name << ": " << to_string(rep.status)
            << " (atoms=" << rep.atomCount << ", depth=" << rep.depthUsed
            << ")\n";
  if (witness && !rep.witness.empty()) std::cout << rep.witness;
}

int cmd_check(const std::string& in, const std::string& dataPath, int depth,
              std::size_t budget, bool witness) {
  const Ontology o = load_ontology(in);
  const Dataset d = parse_dataset(read_file(dataPath));
  SatOptions opts;
  opts.termDepth = depth;
  opts.atomBudget = budget;
  const EquisatReport rep = check_equisat(o, d, opts);
  print_leg("original ", rep.original, witness);
  print_leg("via-xi   ", rep.viaXi, witness);
  if (rep.rewritten)
    print_leg("rewritten", *rep.rewritten, witness);
  else
    std::cout << "rewritten: skipped (not markable)\n";
  std::cout << "verdict: " << to_string(rep.verdict) << "\n";
  switch (rep.verdict) {
    case Verdict::Agree: return kExitOk;
    case Verdict::Inconclusive: return kExitInconclusive;
    case Verdict::Disagree: return kExitDisagree;
  }
  return kExitError;
}

int cmd_stats(const std::string& dir, const std::string& format) {
  const CorpusStats stats = scan_corpus(dir);
  std::cout << (format == "json" ? to_json(stats) : to_csv(stats));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Horn rewriting of non-Horn ontologies: translation to rules, "
      "markability analysis, program transposition, and back-translation"};
  app.require_subcommand(1);

  std::string in, out, mode = "pi", markingList, dataPath, format = "csv";
  bool all = false, minimal = false, renormalize = false, witness = false;
  int depth = SatOptions{}.termDepth;
  std::size_t budget = default_budget();

  auto* translate =
      app.add_subcommand("translate", "Translate an ontology to rules");
  translate->add_option("input", in, "ontology file")->required();
  translate->add_option("--mode", mode, "pi (direct) or xi (skolemized)")
      ->check(CLI::IsMember({"pi", "xi"}))
      ->required();
  translate->add_option("-o,--output", out, "output rules file");

  auto* mark = app.add_subcommand("mark", "Find markings");
  mark->add_option("input", in, "ontology (.dlo) or rules (.rules) file")
      ->required();
  mark->add_flag("--all", all, "enumerate all markings");
  mark->add_flag("--minimal", minimal, "minimize the found marking");

  auto* transpose =
      app.add_subcommand("transpose", "Transpose a rules program");
  transpose->add_option("input", in, "rules file")->required();
  transpose->add_option("--marking", markingList, "comma-separated predicates")
      ->required();
  transpose->add_option("-o,--output", out, "output rules file");

  auto* rewrite =
      app.add_subcommand("rewrite", "Rewrite an ontology into a Horn one");
  rewrite->add_option("input", in, "ontology file")->required();
  rewrite->add_option("-o,--output", out, "output ontology file");
  rewrite->add_flag("--normalize", renormalize,
                    "normalize the rewritten ontology");

  auto* check = app.add_subcommand(
      "check", "Differential satisfiability check across translations");
  check->add_option("input", in, "ontology file")->required();
  check->add_option("data", dataPath, "dataset file")->required();
  check->add_option("--depth", depth, "term depth bound");
  check->add_option("--budget", budget, "derived-atom budget");
  check->add_flag("--witness", witness, "print traces and models");

  auto* stats = app.add_subcommand("stats", "Scan a corpus directory");
  stats->add_option("dir", in, "directory of .dlo files")->required();
  stats->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitError;
  }

  try {
    if (translate->parsed()) return cmd_translate(in, out, mode);
    if (mark->parsed()) return cmd_mark(in, all, minimal);
    if (transpose->parsed()) return cmd_transpose(in, out, markingList);
    if (rewrite->parsed()) return cmd_rewrite(in, out, renormalize);
    if (check->parsed()) return cmd_check(in, dataPath, depth, budget, witness);
    if (stats->parsed()) return cmd_stats(in, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace hornify
