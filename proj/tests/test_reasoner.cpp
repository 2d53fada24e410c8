#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hornify/marking.hpp"
#include "hornify/ontology.hpp"
#include "hornify/program.hpp"
#include "hornify/psi.hpp"
#include "hornify/reasoner.hpp"
#include "hornify/transpose.hpp"
#include "hornify/xi.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace hornify;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> rule_texts(const std::vector<Rule>& rules) {
  std::vector<std::string> out;
  out.reserve(rules.size());
  for (const Rule& r : rules) out.push_back(r.text());
  return out;
}

// Splits "A(a) | B(f(a))" on top-level '|'; trims single spaces around parts.
std::vector<std::string> split_disjuncts(const std::string& clause) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : clause) {
    if (c == '|') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (std::string& s : out) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
  }
  return out;
}

// The clause part of a trace step: text between "] " and " <- ".
std::string clause_of_step(const std::string& line) {
  const auto close = line.find("] ");
  const auto arrow = line.find(" <- ");
  REQUIRE(close != std::string::npos);
  REQUIRE(arrow != std::string::npos);
  return line.substr(close + 2, arrow - close - 2);
}

std::string pred_of_atom_text(const std::string& atom) {
  return atom.substr(0, atom.find('('));
}

// Top-level argument terms of an atom text like "Eq(f(a), a)".
std::vector<std::string> args_of_atom_text(const std::string& atom) {
  const auto open = atom.find('(');
  REQUIRE(open != std::string::npos);
  REQUIRE(atom.back() == ')');
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = open + 1; i + 1 < atom.size(); ++i) {
    const char c = atom[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (std::string& s : out) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
  }
  return out;
}

int term_text_depth(const std::string& term) {
  return (int)std::count(term.begin(), term.end(), '(');
}

const char* kTinyUnsat =
    "A(?x) -> B(?x).\n"
    "B(?x) -> False(?x).\n";

const char* kTinyUnsatTrace =
    "[s1] A(a) <- fact 0\n"
    "[s2] B(a) <- rule core[0] {x->a} from [s1]:A(a)\n"
    "[s3] False(a) <- rule core[1] {x->a} from [s2]:B(a)\n"
    "[s4] empty <- rule bot[0] {x->a} from [s3]:False(a)\n";

Program transposed_branching() {
  const Program p = testfix::branching_program();
  return transpose_program(p, parse_marking("C,Bot", p));
}

}  // namespace

TEST_SUITE_BEGIN("reasoner");

TEST_CASE("grounding a one-rule functional program at increasing depths") {
  const Program p = parse_program("A(?x) -> B(f_R_B(?x)).");
  const Dataset d = parse_dataset("A(a)");

  SUBCASE("depth 0 omits every instance with a functional head") {
    const auto rules = ground_program(p, d, 0);
    CHECK(rules.size() == 8);
    const auto texts = rule_texts(rules);
    for (const auto& t : texts) CHECK(t.find("f_R_B") == std::string::npos);
  }
  SUBCASE("depth 1 adds the core instance and function congruence") {
    const auto rules = ground_program(p, d, 1);
    CHECK(rules.size() == 30);
    const auto texts = rule_texts(rules);
    CHECK(std::count(texts.begin(), texts.end(), "A(a) -> B(f_R_B(a)).") == 1);
    CHECK(std::count(texts.begin(), texts.end(),
                     "Eq(a, a) -> Eq(f_R_B(a), f_R_B(a)).") == 1);
  }
  SUBCASE("depth 2 closes the term universe one level further") {
    const auto rules = ground_program(p, d, 2);
    CHECK(rules.size() == 72);
    const auto texts = rule_texts(rules);
    CHECK(std::count(texts.begin(), texts.end(),
                     "A(f_R_B(a)) -> B(f_R_B(f_R_B(a))).") == 1);
  }
}

TEST_CASE("grounding injects a default constant for an empty dataset") {
  const Program p = parse_program("A(?x) -> B(f_R_B(?x)).");
  const auto rules = ground_program(p, Dataset{}, 0);
  CHECK(rules.size() == 8);
  const auto texts = rule_texts(rules);
  CHECK(std::count(texts.begin(), texts.end(), "A(c0) -> True(c0).") == 1);
}

TEST_CASE("grounding the successor-sharing chain translation") {
  const Program p = xi_translate(testfix::chain_ontology());
  const auto rules = ground_program(p, parse_dataset("A(a)\nE(a)"), 2);
  CHECK(rules.size() == 1619);
  const auto texts = rule_texts(rules);
  CHECK(std::count(texts.begin(), texts.end(), "B(a) -> D(f_R_D(a)).") == 1);
}

TEST_CASE("grounding enforces its instance budget") {
  const Program p = xi_translate(testfix::chain_ontology());
  CHECK_THROWS_AS(ground_program(p, parse_dataset("A(a)\nE(a)"), 2, 50),
                  std::runtime_error);
}

TEST_CASE("the Horn engine rejects programs with disjunctive heads") {
  CHECK_THROWS_AS(saturate_horn(testfix::branching_program(), Dataset{}),
                  std::invalid_argument);
}

TEST_CASE("a two-step refutation with its full trace") {
  const Program p = parse_program(kTinyUnsat);
  const Dataset d = parse_dataset("A(a)");
  const SatReport r = saturate_horn(p, d);
  CHECK(r.status == SatStatus::Unsat);
  CHECK(r.depthUsed == 0);
  CHECK(r.atomCount == 5);
  CHECK(r.witness == kTinyUnsatTrace);
  CHECK(validate_trace(p, d, r.witness) == std::nullopt);
}

TEST_CASE("a conclusive model for a function-free Horn program") {
  const Program p = parse_program("A(?x) -> B(?x).");
  const SatReport r = saturate_horn(p, parse_dataset("A(a)"));
  CHECK(r.status == SatStatus::Sat);
  CHECK(r.depthUsed == 0);
  CHECK(r.atomCount == 4);
  CHECK(r.witness == "A(a)\nB(a)\nTrue(a)\nEq(a, a)\n");
}

TEST_CASE("closure components alone never produce a clash") {
  const SatReport r = saturate_horn(make_program({}), parse_dataset("A(a)"));
  CHECK(r.status == SatStatus::Sat);
  CHECK(r.witness == "A(a)\nTrue(a)\nEq(a, a)\n");
}

TEST_CASE("a functional head at the depth bound downgrades SAT to bounded") {
  const Program p = parse_program("A(?x) -> B(f_R_B(?x)).");
  SatOptions opts;
  opts.termDepth = 0;
  const SatReport r = saturate_horn(p, parse_dataset("A(a)"), opts);
  CHECK(r.status == SatStatus::SatBounded);
  CHECK(r.atomCount == 3);
}

TEST_CASE("refuting the transposed branching program from its entry fact") {
  const Program t = transposed_branching();
  const Dataset d = parse_dataset("A(a)");
  SatOptions opts;
  opts.termDepth = 2;
  const SatReport r = saturate_horn(t, d, opts);
  CHECK(r.status == SatStatus::Unsat);
  CHECK(r.atomCount == 16);
  CHECK(r.witness ==
        "[s1] A(a) <- fact 0\n"
        "[s2] not_False(a) <- rule core[6] {x->a} from [s1]:A(a)\n"
        "[s3] not_False(sk0(a)) <- rule core[10] {x->a} from "
        "[s2]:not_False(a)\n"
        "[s4] B(a) <- rule core[0] {x->a} from [s1]:A(a)\n"
        "[s5] not_C(a) <- rule core[2] {x->a} from [s2]:not_False(a)\n"
        "[s6] D(a) <- rule core[1] {x->a} from [s4]:B(a), [s5]:not_C(a)\n"
        "[s7] not_C(sk0(a)) <- rule core[2] {x->sk0(a)} from "
        "[s3]:not_False(sk0(a))\n"
        "[s8] False(sk0(a)) <- rule core[3] {x->a, z->sk0(a)} from "
        "[s3]:not_False(sk0(a)), [s6]:D(a), [s7]:not_C(sk0(a))\n"
        "[s9] empty <- rule bot[0] {x->sk0(a)} from [s8]:False(sk0(a))\n");
  CHECK(validate_trace(t, d, r.witness) == std::nullopt);
}

TEST_CASE("rules keep firing on atoms derived while a scan is in flight") {
  // The mid-derivation fact forces the complement-closure chain
  // not_False(a) -> not_False(sk0(a)) -> not_C(sk0(a)) to fire while other
  // rules are still matching against the same growing atom store.
  const Program t = transposed_branching();
  const Dataset d = parse_dataset("B(a)");
  SatOptions opts;
  opts.termDepth = 2;
  const SatReport r = saturate_horn(t, d, opts);
  CHECK(r.status == SatStatus::Unsat);
  CHECK(r.atomCount == 15);
  CHECK(r.witness ==
        "[s1] B(a) <- fact 0\n"
        "[s2] not_False(a) <- rule core[7] {x->a} from [s1]:B(a)\n"
        "[s3] not_False(sk0(a)) <- rule core[10] {x->a} from "
        "[s2]:not_False(a)\n"
        "[s4] not_C(a) <- rule core[2] {x->a} from [s2]:not_False(a)\n"
        "[s5] D(a) <- rule core[1] {x->a} from [s1]:B(a), [s4]:not_C(a)\n"
        "[s6] not_C(sk0(a)) <- rule core[2] {x->sk0(a)} from "
        "[s3]:not_False(sk0(a))\n"
        "[s7] False(sk0(a)) <- rule core[3] {x->a, z->sk0(a)} from "
        "[s3]:not_False(sk0(a)), [s5]:D(a), [s6]:not_C(sk0(a))\n"
        "[s8] empty <- rule bot[0] {x->sk0(a)} from [s7]:False(sk0(a))\n");
  CHECK(validate_trace(t, d, r.witness) == std::nullopt);
}

TEST_CASE("case splitting refutes both chain translations on the clash data") {
  const Ontology o = testfix::chain_ontology();
  const Dataset d = parse_dataset("A(a)\nE(a)");
  SatOptions opts;
  opts.termDepth = 2;

  const Program pi = pi_translate(o);
  const SatReport rp = check_sat_disjunctive(pi, d, opts);
  CHECK(rp.status == SatStatus::Unsat);
  CHECK(validate_trace(pi, d, rp.witness) == std::nullopt);

  const Program xi = xi_translate(o);
  const SatReport rx = check_sat_disjunctive(xi, d, opts);
  CHECK(rx.status == SatStatus::Unsat);
  CHECK(validate_trace(xi, d, rx.witness) == std::nullopt);
}

TEST_CASE("a one-element model keeps the chain satisfiable") {
  SatOptions opts;
  opts.termDepth = 2;
  const SatReport r = check_sat_disjunctive(pi_translate(testfix::chain_ontology()),
                                            parse_dataset("E(a)"), opts);
  CHECK(r.status == SatStatus::SatBounded);
}

TEST_CASE("every node of a disjunctive trace is Horn or fully disjunctive") {
  const Program pi = pi_translate(testfix::chain_ontology());
  const Dataset d = parse_dataset("A(a)\nE(a)");
  SatOptions opts;
  opts.termDepth = 2;
  const SatReport r = check_sat_disjunctive(pi, d, opts);
  REQUIRE(r.status == SatStatus::Unsat);

  const PredicateClass classes = classify_predicates(pi);
  std::set<std::string> disjunctive;
  for (const Predicate& p : classes.disjunctive) disjunctive.insert(p.text());

  for (const std::string& line : lines_of(r.witness)) {
    const std::string clause = clause_of_step(line);
    if (clause == "empty") continue;
    const auto parts = split_disjuncts(clause);
    if (parts.size() == 1) continue;  // a single Horn atom
    for (const auto& atom : parts) {
      INFO("disjunct ", atom, " in step: ", line);
      CHECK(disjunctive.count(pred_of_atom_text(atom)) == 1);
    }
  }
}

TEST_CASE("trace validation rejects tampered refutations") {
  const Program p = parse_program(kTinyUnsat);
  const Dataset d = parse_dataset("A(a)");
  REQUIRE(validate_trace(p, d, kTinyUnsatTrace) == std::nullopt);

  auto tampered = [&](const std::string& from, const std::string& to) {
    std::string t = kTinyUnsatTrace;
    const auto pos = t.find(from);
    REQUIRE(pos != std::string::npos);
    t.replace(pos, from.size(), to);
    return validate_trace(p, d, t);
  };

  SUBCASE("substitution over an unknown constant") {
    const auto err = tampered("{x->a} from [s1]", "{x->b} from [s1]");
    REQUIRE(err.has_value());
    CHECK(err->find("unknown constant 'b'") != std::string::npos);
  }
  SUBCASE("premise atom differs from the instantiated body") {
    const auto err = tampered("from [s2]:B(a)", "from [s2]:A(a)");
    REQUIRE(err.has_value());
    CHECK(err->find("premise atom does not match") != std::string::npos);
  }
  SUBCASE("premise step does not contain the resolved atom") {
    const auto err = tampered("from [s2]:B(a)", "from [s1]:B(a)");
    REQUIRE(err.has_value());
    CHECK(err->find("premise clause does not contain") != std::string::npos);
  }
  SUBCASE("conclusion is not the hyperresolvent of the cited rule") {
    const auto err = tampered("[s3] False(a)", "[s3] B(a)");
    REQUIRE(err.has_value());
    CHECK(err->find("not the hyperresolvent") != std::string::npos);
  }
  SUBCASE("citing a rule that does not exist") {
    const auto err = tampered("rule core[1]", "rule core[9]");
    REQUIRE(err.has_value());
    CHECK(err->find("unknown rule") != std::string::npos);
  }
  SUBCASE("fact index out of range") {
    const auto err = tampered("fact 0", "fact 7");
    REQUIRE(err.has_value());
    CHECK(err->find("fact index out of range") != std::string::npos);
  }
  SUBCASE("leaf clause must equal the dataset fact") {
    const auto err = tampered("[s1] A(a)", "[s1] B(a)");
    REQUIRE(err.has_value());
    CHECK(err->find("does not match the dataset fact") != std::string::npos);
  }
  SUBCASE("variables are not ground terms") {
    const auto err = tampered("[s1] A(a)", "[s1] A(?x)");
    REQUIRE(err.has_value());
  }
  SUBCASE("duplicate step identifiers") {
    const auto err = tampered("[s2] B(a)", "[s1] B(a)");
    REQUIRE(err.has_value());
    CHECK(err->find("duplicate step id") != std::string::npos);
  }
  SUBCASE("an activity leaf must carry the Top atom of its constant") {
    const auto err = tampered("[s1] A(a) <- fact 0", "[s1] B(a) <- active a");
    REQUIRE(err.has_value());
    CHECK(err->find("active step clause") != std::string::npos);
  }
  SUBCASE("dropping the final step leaves no empty clause") {
    std::string t = kTinyUnsatTrace;
    t.resize(t.find("[s4]"));
    const auto err = validate_trace(p, d, t);
    REQUIRE(err.has_value());
    CHECK(err->find("final step does not derive the empty clause") !=
          std::string::npos);
  }
  SUBCASE("an empty trace proves nothing") {
    const auto err = validate_trace(p, d, "");
    REQUIRE(err.has_value());
    CHECK(*err == "trace is empty");
  }
}

TEST_CASE("differential check on the chain ontology and the clash dataset") {
  SatOptions opts;
  opts.termDepth = 2;
  const EquisatReport rep =
      check_equisat(testfix::chain_ontology(), parse_dataset("A(a)\nE(a)"), opts);
  CHECK(rep.markable);
  REQUIRE(rep.rewritten.has_value());
  CHECK(rep.original.status == SatStatus::Unsat);
  CHECK(rep.viaXi.status == SatStatus::Unsat);
  CHECK(rep.rewritten->status == SatStatus::Unsat);
  CHECK(rep.verdict == Verdict::Agree);
}

TEST_CASE("differential check stays inconclusive without conclusive legs") {
  SatOptions opts;
  opts.termDepth = 2;
  const EquisatReport rep =
      check_equisat(testfix::chain_ontology(), Dataset{}, opts);
  CHECK(rep.markable);
  CHECK(rep.original.status == SatStatus::SatBounded);
  CHECK(rep.viaXi.status == SatStatus::SatBounded);
  REQUIRE(rep.rewritten.has_value());
  CHECK(rep.rewritten->status == SatStatus::SatBounded);
  CHECK(rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("differential check never disagrees on the satisfiable chain data") {
  SatOptions opts;
  opts.termDepth = 3;
  const EquisatReport rep =
      check_equisat(testfix::chain_ontology(), parse_dataset("C(a)"), opts);
  CHECK(rep.verdict != Verdict::Disagree);
  CHECK(rep.original.status != SatStatus::Unsat);
  CHECK(rep.viaXi.status != SatStatus::Unsat);
}

TEST_CASE("differential check is conclusive on function-free input") {
  const Ontology o = parse_ontology("SubClassOf(A Or(B C))");
  const EquisatReport rep = check_equisat(o, parse_dataset("A(a)"));
  CHECK(rep.markable);
  CHECK(rep.original.status == SatStatus::Sat);
  CHECK(rep.viaXi.status == SatStatus::Sat);
  REQUIRE(rep.rewritten.has_value());
  CHECK(rep.rewritten->status == SatStatus::Sat);
  CHECK(rep.verdict == Verdict::Agree);
}

TEST_CASE("conclusive statuses persist as the depth bound grows") {
  std::mt19937_64 rng(7272);
  SatOptions shallow;
  shallow.termDepth = 1;
  SatOptions deep;
  deep.termDepth = 2;
  int conclusive = 0;
  for (int i = 0; i < 25; ++i) {
    const Ontology o = testgen::random_ontology(rng, 5, 2, 6);
    const Dataset d = testgen::random_dataset(rng, o, 2, 4);
    const Program p = xi_translate(o);
    const SatReport a = check_sat_disjunctive(p, d, shallow);
    const SatReport b = check_sat_disjunctive(p, d, deep);
    INFO("ontology:\n", serialize_ontology(o), "dataset:\n",
         serialize_dataset(d));
    if (a.status == SatStatus::Unsat) {
      ++conclusive;
      CHECK(b.status == SatStatus::Unsat);
    } else if (a.status == SatStatus::Sat) {
      ++conclusive;
      CHECK(b.status == SatStatus::Sat);
    }
    if (a.status == SatStatus::Unsat)
      CHECK(validate_trace(p, d, a.witness) == std::nullopt);
    if (b.status == SatStatus::Unsat)
      CHECK(validate_trace(p, d, b.witness) == std::nullopt);
  }
  CHECK(conclusive >= 3);  // the family must exercise the conclusive paths
}

TEST_CASE("transposed programs derive the falsity guard everywhere") {
  std::mt19937_64 rng(4646);
  SatOptions opts;
  opts.termDepth = 2;
  int checked = 0;
  for (int i = 0; i < 60 && checked < 12; ++i) {
    const Ontology o = testgen::random_ontology(rng, 5, 2, 6);
    const Dataset d = testgen::random_dataset(rng, o, 2, 4);
    const Program xi = xi_translate(o);
    const auto marking = find_marking(xi);
    if (!marking) continue;
    const Program t = transpose_program(xi, *marking);
    const SatReport r = saturate_horn(t, d, opts);
    if (r.status == SatStatus::Unsat) continue;
    ++checked;

    const auto lines = lines_of(r.witness);
    const std::set<std::string> derived(lines.begin(), lines.end());
    std::set<std::string> vocabulary;
    for (const Predicate& p : xi.signature.predicates)
      if (p.is_ordinary()) vocabulary.insert(p.text());

    INFO("ontology:\n", serialize_ontology(o), "dataset:\n",
         serialize_dataset(d), "model:\n", r.witness);
    for (const std::string& atom : lines) {
      // Every individual seen by the input vocabulary carries the guard...
      if (vocabulary.count(pred_of_atom_text(atom)) == 0) continue;
      for (const std::string& arg : args_of_atom_text(atom))
        CHECK(derived.count("not_False(" + arg + ")") == 1);
    }
    for (const std::string& atom : lines) {
      // ...and the guard is closed under every function symbol in range.
      if (pred_of_atom_text(atom) != "not_False") continue;
      const std::string arg = args_of_atom_text(atom).at(0);
      if (term_text_depth(arg) >= opts.termDepth) continue;
      for (const FunctionSymbol& f : t.signature.functions)
        CHECK(derived.count("not_False(" + f.text() + "(" + arg + "))") == 1);
    }
  }
  CHECK(checked >= 8);
}

TEST_CASE("adding function congruence preserves refutability") {
  std::mt19937_64 rng(9911);
  SatOptions opts;
  opts.termDepth = 2;
  SigmaOptions plain;
  plain.congruenceOnFunctionPositions = false;
  int refuted = 0;
  for (int i = 0; i < 80; ++i) {
    const Ontology o = testgen::random_ontology(rng, 5, 2, 6);
    const Dataset d = testgen::random_dataset(rng, o, 2, 4);
    const SatReport off = check_sat_disjunctive(xi_translate(o, plain), d, opts);
    if (off.status != SatStatus::Unsat) continue;
    ++refuted;
    const SatReport on = check_sat_disjunctive(xi_translate(o), d, opts);
    INFO("ontology:\n", serialize_ontology(o), "dataset:\n",
         serialize_dataset(d));
    CHECK(on.status == SatStatus::Unsat);
  }
  CHECK(refuted >= 3);
}

TEST_SUITE_END();
