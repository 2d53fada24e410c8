#include "hornify/reasoner.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hornify/psi.hpp"
#include "hornify/xi.hpp"

namespace hornify {

const char* to_string(SatStatus s) {
  switch (s) {
    case SatStatus::Unsat: return "UNSAT";
    case SatStatus::Sat: return "SAT";
    case SatStatus::SatBounded: return "SAT_BOUNDED";
  }
  return "SAT_BOUNDED";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Agree: return "AGREE";
    case Verdict::Disagree: return "DISAGREE";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

constexpr const char* kDefaultConstant = "c0";

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

struct IndexedRule {
  std::string ref;  // "core[0]", "top[2]", ...
  const Rule* rule;
};

std::vector<IndexedRule> index_rules(const Program& p) {
  std::vector<IndexedRule> out;
  auto seg = [&](const char* name, const std::vector<Rule>& rules) {
    for (std::size_t i = 0; i < rules.size(); ++i)
      out.push_back(
          {std::string(name) + "[" + std::to_string(i) + "]", &rules[i]});
  };
  seg("core", p.core);
  seg("top", p.sigmaTop);
  seg("bot", p.sigmaBot);
  seg("eq", p.sigmaEq);
  return out;
}

int atom_depth(const Atom& a) {
  int d = 0;
  for (const auto& t : a.args) d = std::max(d, t.depth());
  return d;
}

bool atom_ground(const Atom& a) {
  for (const auto& t : a.args)
    if (!t.ground()) return false;
  return true;
}

std::set<std::string> known_constants(const Program& p, const Dataset& d) {
  std::set<std::string> cs = d.constants();
  cs.insert(p.signature.constants.begin(), p.signature.constants.end());
  if (cs.empty()) cs.insert(kDefaultConstant);
  return cs;
}

Atom fact_atom(const Fact& f) {
  if (f.binary)
    return Atom{Predicate::role(f.predicate),
                {Term::constant(f.c1), Term::constant(f.c2)}};
  return Atom{Predicate::concept_name(f.predicate), {Term::constant(f.c1)}};
}

// Matching binds variables directly into a shared substitution and records
// every fresh binding on a trail, so backtracking in the join enumeration
// undoes bindings instead of copying the whole substitution per candidate.
using Trail = std::vector<Substitution::iterator>;

void unwind(Substitution& s, Trail& trail, std::size_t mark) {
  while (trail.size() > mark) {
    s.erase(trail.back());
    trail.pop_back();
  }
}

bool match_term(const Term& pat, const Term& ground, Substitution& s,
                Trail& trail) {
  if (pat.is_var()) {
    auto [it, fresh] = s.try_emplace(pat.name(), ground);
    if (!fresh) return it->second.compare(ground) == 0;
    trail.push_back(it);
    return true;
  }
  if (pat.is_const()) return ground.is_const() && ground.name() == pat.name();
  if (!ground.is_app() || !(pat.fn() == ground.fn())) return false;
  return match_term(pat.arg(), ground.arg(), s, trail);
}

// Leaves `s` unchanged when the match fails.
bool match_atom(const Atom& pat, const Atom& ground, Substitution& s,
                Trail& trail) {
  if (!(pat.pred == ground.pred) || pat.args.size() != ground.args.size())
    return false;
  const std::size_t mark = trail.size();
  for (std::size_t i = 0; i < pat.args.size(); ++i) {
    if (!match_term(pat.args[i], ground.args[i], s, trail)) {
      unwind(s, trail, mark);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Derived-atom store with provenance
// ---------------------------------------------------------------------------

struct Prov {
  enum class Kind : std::uint8_t { Fact, Active, Fire, Decision };
  Kind kind = Kind::Fact;
  int fact = -1;              // Fact: dataset index
  std::string constant;       // Active: activated constant
  int rule = -1;              // Fire: position in the rule index
  std::vector<int> premises;  // Fire: matched atom id per body position
  Substitution subst;         // Fire
};

struct Store {
  std::vector<Atom> atoms;
  std::vector<Prov> prov;
  std::map<Atom, int> ids;
  std::map<Predicate, std::vector<int>> byPred;

  bool contains(const Atom& a) const { return ids.count(a) != 0; }

  // Returns the new id, or -1 when the atom was already present.
  int add(Atom a, Prov pv) {
    auto [it, fresh] = ids.emplace(std::move(a), (int)atoms.size());
    if (!fresh) return -1;
    atoms.push_back(it->first);
    prov.push_back(std::move(pv));
    byPred[it->first.pred].push_back(it->second);
    return it->second;
  }
};

// ---------------------------------------------------------------------------
// Hyperresolution proof DAG
// ---------------------------------------------------------------------------

struct ProofNode;
using NodePtr = std::shared_ptr<const ProofNode>;

struct ProofNode {
  enum class Kind : std::uint8_t { Fact, Active, Resolve };
  Kind kind = Kind::Fact;
  std::set<Atom> clause;
  int fact = -1;          // Fact
  std::string constant;   // Active
  int rule = -1;          // Resolve
  Substitution subst;     // Resolve
  std::vector<std::pair<NodePtr, Atom>> premises;  // electron, resolved atom
};

std::string clause_text(const std::set<Atom>& clause) {
  if (clause.empty()) return "empty";
  std::string s;
  for (const auto& a : clause) {
    if (!s.empty()) s += " | ";
    s += a.text();
  }
  return s;
}

std::string subst_text(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s) {
    if (!first) out += ", ";
    first = false;
    out += v + "->" + t.text();
  }
  return out + "}";
}

std::string print_trace(const NodePtr& root,
                        const std::vector<IndexedRule>& rules) {
  std::map<const ProofNode*, int> ids;
  std::vector<const ProofNode*> order;
  std::function<void(const NodePtr&)> visit = [&](const NodePtr& n) {
    if (ids.count(n.get())) return;
    ids.emplace(n.get(), 0);  // mark visited before numbering children loops
    for (const auto& [child, atom] : n->premises) {
      (void)atom;
      visit(child);
    }
    order.push_back(n.get());
    ids[n.get()] = (int)order.size();
  };
  visit(root);

  std::string out;
  for (const ProofNode* n : order) {
    out += "[s" + std::to_string(ids[n]) + "] " + clause_text(n->clause) +
           " <- ";
    switch (n->kind) {
      case ProofNode::Kind::Fact:
        out += "fact " + std::to_string(n->fact);
        break;
      case ProofNode::Kind::Active:
        out += "active " + n->constant;
        break;
      case ProofNode::Kind::Resolve: {
        out += "rule " + rules[n->rule].ref + " " + subst_text(n->subst) +
               " from ";
        if (n->premises.empty()) {
          out += "-";
        } else {
          bool first = true;
          for (const auto& [child, atom] : n->premises) {
            if (!first) out += ", ";
            first = false;
            out += "[s" + std::to_string(ids[child.get()]) + "]:" + atom.text();
          }
        }
        break;
      }
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search engine
// ---------------------------------------------------------------------------

struct PendingDisj {
  std::vector<Atom> alternatives;  // canonical (sorted) order
  int rule = -1;
  std::vector<int> premises;
  Substitution subst;
};

struct Branch {
  Store store;
  std::size_t cursor = 0;  // next atom id to drive matching from
  std::vector<PendingDisj> pending;
  std::set<std::vector<Atom>> seenDisj;
  std::map<int, NodePtr> decisionNodes;  // decision atom id -> source clause
  bool boundary = false;
  bool refuted = false;
  int refutRule = -1;
  std::vector<int> refutPremises;
  Substitution refutSubst;
};

class Engine {
 public:
  Engine(const Program& p, const Dataset& d, const SatOptions& opts)
      : program_(p),
        dataset_(d),
        rules_(index_rules(p)),
        opts_(opts),
        budget_(opts.atomBudget) {}

  SatReport run() {
    Branch root;
    init(root);
    SearchResult res = search(std::move(root));
    SatReport rep;
    rep.atomCount = atomCount_;
    rep.depthUsed = depthUsed_;
    switch (res.kind) {
      case SearchResult::Kind::Proof:
        rep.status = SatStatus::Unsat;
        rep.witness = print_trace(res.node, rules_);
        break;
      case SearchResult::Kind::Sat:
        rep.status = SatStatus::Sat;
        rep.witness = std::move(res.model);
        break;
      case SearchResult::Kind::Bounded:
        rep.status = SatStatus::SatBounded;
        rep.witness = std::move(res.model);
        break;
    }
    return rep;
  }

 private:
  struct SearchResult {
    enum class Kind : std::uint8_t { Proof, Sat, Bounded };
    Kind kind = Kind::Bounded;
    NodePtr node;       // Proof
    std::string model;  // Sat / Bounded: derived atoms, one per line
  };

  void add_atom(Branch& b, Atom a, Prov pv) {
    if (b.store.contains(a)) return;
    if (budget_ == 0) {
      b.boundary = true;
      return;
    }
    const int d = atom_depth(a);
    const int id = b.store.add(std::move(a), std::move(pv));
    if (id < 0) return;
    --budget_;
    ++atomCount_;
    depthUsed_ = std::max(depthUsed_, d);
  }

  void init(Branch& b) {
    for (std::size_t i = 0; i < dataset_.facts.size(); ++i) {
      Prov pv;
      pv.kind = Prov::Kind::Fact;
      pv.fact = (int)i;
      add_atom(b, fact_atom(dataset_.facts[i]), std::move(pv));
    }
    for (const auto& c : known_constants(program_, dataset_)) {
      Prov pv;
      pv.kind = Prov::Kind::Active;
      pv.constant = c;
      add_atom(b, Atom{Predicate::top(), {Term::constant(c)}}, std::move(pv));
    }
    for (std::size_t r = 0; r < rules_.size(); ++r)
      if (rules_[r].rule->body.empty()) fire(b, (int)r, {}, {});
  }

  void fire(Branch& b, int ruleIdx, const std::vector<int>& premises,
            const Substitution& s) {
    const Rule& r = *rules_[ruleIdx].rule;
    if (r.head.empty()) {
      b.refuted = true;
      b.refutRule = ruleIdx;
      b.refutPremises = premises;
      b.refutSubst = s;
      return;
    }
    std::vector<Atom> heads;
    int maxd = 0;
    for (const auto& h : r.head) {
      Atom g = apply_substitution(h, s);
      assert(atom_ground(g) && "rule heads must be range-restricted");
      if (b.store.contains(g)) return;  // head already satisfied
      maxd = std::max(maxd, atom_depth(g));
      heads.push_back(std::move(g));
    }
    if (maxd > opts_.termDepth) {
      b.boundary = true;  // a satisfied body produced an out-of-range head
      return;
    }
    if (heads.size() == 1) {
      Prov pv;
      pv.kind = Prov::Kind::Fire;
      pv.rule = ruleIdx;
      pv.premises = premises;
      pv.subst = s;
      add_atom(b, std::move(heads[0]), std::move(pv));
      return;
    }
    std::sort(heads.begin(), heads.end());
    heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
    if (heads.size() == 1) {
      Prov pv;
      pv.kind = Prov::Kind::Fire;
      pv.rule = ruleIdx;
      pv.premises = premises;
      pv.subst = s;
      add_atom(b, std::move(heads[0]), std::move(pv));
      return;
    }
    if (!b.seenDisj.insert(heads).second) return;
    b.pending.push_back({std::move(heads), ruleIdx, premises, s});
  }

  // Complete a rule whose body position `pinned` is matched to atom id.
  void extend(Branch& b, int ruleIdx, std::size_t pos, std::size_t pinned,
              std::vector<int>& premises, Substitution& s, Trail& trail) {
    if (b.refuted || budget_ == 0) return;
    const Rule& r = *rules_[ruleIdx].rule;
    if (pos == r.body.size()) {
      fire(b, ruleIdx, premises, s);
      return;
    }
    if (pos == pinned) {
      extend(b, ruleIdx, pos + 1, pinned, premises, s, trail);
      return;
    }
    auto it = b.store.byPred.find(r.body[pos].pred);
    if (it == b.store.byPred.end()) return;
    const std::size_t n = it->second.size();  // snapshot: later atoms drive
    for (std::size_t k = 0; k < n; ++k) {     // their own matching pass
      const int cand = it->second[k];
      const std::size_t mark = trail.size();
      if (!match_atom(r.body[pos], b.store.atoms[cand], s, trail)) continue;
      premises[pos] = cand;
      extend(b, ruleIdx, pos + 1, pinned, premises, s, trail);
      premises[pos] = -1;
      unwind(s, trail, mark);
    }
  }

  void match_rules(Branch& b, int atomId) {
    // By value: firing rules below appends to the store, which may reallocate
    // the atom vector and would leave a reference dangling mid-scan.
    const Atom a = b.store.atoms[atomId];
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      const Rule& rule = *rules_[r].rule;
      for (std::size_t i = 0; i < rule.body.size(); ++i) {
        if (!(rule.body[i].pred == a.pred)) continue;
        Substitution s;
        Trail trail;
        if (!match_atom(rule.body[i], a, s, trail)) continue;
        std::vector<int> premises(rule.body.size(), -1);
        premises[i] = atomId;
        extend(b, (int)r, 0, i, premises, s, trail);
        if (b.refuted) return;
      }
    }
  }

  void saturate(Branch& b) {
    while (b.cursor < b.store.atoms.size() && !b.refuted) {
      if (budget_ == 0) {
        b.boundary = true;
        break;
      }
      match_rules(b, (int)b.cursor);
      ++b.cursor;
    }
  }

  NodePtr build_node(const Branch& b, int atomId,
                     std::map<int, NodePtr>& memo) {
    auto it = memo.find(atomId);
    if (it != memo.end()) return it->second;
    const Prov& pv = b.store.prov[atomId];
    NodePtr n;
    switch (pv.kind) {
      case Prov::Kind::Fact: {
        auto node = std::make_shared<ProofNode>();
        node->kind = ProofNode::Kind::Fact;
        node->fact = pv.fact;
        node->clause = {b.store.atoms[atomId]};
        n = node;
        break;
      }
      case Prov::Kind::Active: {
        auto node = std::make_shared<ProofNode>();
        node->kind = ProofNode::Kind::Active;
        node->constant = pv.constant;
        node->clause = {b.store.atoms[atomId]};
        n = node;
        break;
      }
      case Prov::Kind::Fire:
        n = build_resolution(b, {b.store.atoms[atomId]}, pv.rule, pv.premises,
                             pv.subst, memo);
        break;
      case Prov::Kind::Decision:
        n = b.decisionNodes.at(atomId);
        break;
    }
    memo.emplace(atomId, n);
    return n;
  }

  NodePtr build_resolution(const Branch& b, const std::vector<Atom>& heads,
                           int ruleIdx, const std::vector<int>& premises,
                           const Substitution& subst,
                           std::map<int, NodePtr>& memo) {
    auto node = std::make_shared<ProofNode>();
    node->kind = ProofNode::Kind::Resolve;
    node->rule = ruleIdx;
    node->subst = subst;
    node->clause.insert(heads.begin(), heads.end());
    const Rule& r = *rules_[ruleIdx].rule;
    for (std::size_t i = 0; i < premises.size(); ++i) {
      Atom resolved = apply_substitution(r.body[i], subst);
      NodePtr child = build_node(b, premises[i], memo);
      for (const auto& a : child->clause)
        if (!(a == resolved)) node->clause.insert(a);
      node->premises.emplace_back(std::move(child), std::move(resolved));
    }
    return node;
  }

  std::string model_text(const Branch& b) const {
    std::vector<Atom> atoms = b.store.atoms;
    std::sort(atoms.begin(), atoms.end());
    std::string out;
    for (const auto& a : atoms) out += a.text() + "\n";
    return out;
  }

  SearchResult search(Branch b) {
    saturate(b);
    if (b.refuted) {
      std::map<int, NodePtr> memo;
      SearchResult res;
      res.kind = SearchResult::Kind::Proof;
      res.node = build_resolution(b, {}, b.refutRule, b.refutPremises,
                                  b.refutSubst, memo);
      return res;
    }

    // Pending disjunctions that are still unsatisfied.
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < b.pending.size(); ++i) {
      const auto& alts = b.pending[i].alternatives;
      if (std::none_of(alts.begin(), alts.end(),
                       [&](const Atom& a) { return b.store.contains(a); }))
        live.push_back(i);
    }
    if (live.empty()) {
      SearchResult res;
      res.kind = b.boundary ? SearchResult::Kind::Bounded
                            : SearchResult::Kind::Sat;
      res.model = model_text(b);
      return res;
    }
    if (budget_ == 0) {
      // No room to assume alternatives; splitting would not terminate.
      SearchResult res;
      res.kind = SearchResult::Kind::Bounded;
      res.model = model_text(b);
      return res;
    }

    // Split on the smallest pending disjunction, earliest first.
    std::size_t best = live[0];
    for (std::size_t i : live)
      if (b.pending[i].alternatives.size() <
          b.pending[best].alternatives.size())
        best = i;
    const PendingDisj chosen = b.pending[best];

    std::map<int, NodePtr> memo;
    NodePtr current = build_resolution(b, chosen.alternatives, chosen.rule,
                                       chosen.premises, chosen.subst, memo);

    auto assume = [&](const Branch& base, const Atom& alt,
                      const NodePtr& source) {
      Branch nb = base;
      Prov pv;
      pv.kind = Prov::Kind::Decision;
      if (budget_ > 0) {
        const int id = nb.store.add(alt, std::move(pv));
        if (id >= 0) {
          --budget_;
          ++atomCount_;
          depthUsed_ = std::max(depthUsed_, atom_depth(alt));
          nb.decisionNodes.emplace(id, source);
        }
      } else {
        nb.boundary = true;
      }
      return nb;
    };

    for (std::size_t j = 0; j < chosen.alternatives.size(); ++j) {
      const Atom& alt = chosen.alternatives[j];
      if (!current->clause.count(alt)) continue;
      SearchResult sub = search(assume(b, alt, current));
      if (sub.kind == SearchResult::Kind::Proof) {
        current = sub.node;
        continue;
      }
      // A saturated model under this assumption settles the branch; an
      // inconclusive answer caps the whole search at SAT_BOUNDED, since a
      // conclusive SAT would need a closed model of this very branch.
      return sub;
    }

    SearchResult res;
    res.kind = SearchResult::Kind::Proof;
    res.node = current;
    return res;
  }

  const Program& program_;
  const Dataset& dataset_;
  std::vector<IndexedRule> rules_;
  SatOptions opts_;
  std::size_t budget_;
  std::size_t atomCount_ = 0;
  int depthUsed_ = 0;
};

}  // namespace

SatReport check_sat_disjunctive(const Program& p, const Dataset& d,
                                const SatOptions& opts) {
  return Engine(p, d, opts).run();
}

SatReport saturate_horn(const Program& p, const Dataset& d,
                        const SatOptions& opts) {
  if (!is_horn_program(p))
    throw std::invalid_argument("saturate_horn: program is not Horn");
  return Engine(p, d, opts).run();
}

// ---------------------------------------------------------------------------
// Grounding
// ---------------------------------------------------------------------------

std::vector<Rule> ground_program(const Program& p, const Dataset& d,
                                 int maxDepth, std::size_t budget) {
  if (maxDepth < 0)
    throw std::invalid_argument("ground_program: negative depth");

  std::vector<Term> universe;
  for (const auto& c : known_constants(p, d))
    universe.push_back(Term::constant(c));
  std::size_t start = 0;
  for (int depth = 1; depth <= maxDepth; ++depth) {
    const std::size_t end = universe.size();
    for (std::size_t i = start; i < end; ++i)
      for (const auto& f : p.signature.functions)
        universe.push_back(Term::app(f, universe[i]));
    start = end;
    if (universe.size() > budget)
      throw std::runtime_error(
          "ground_program: term universe exceeds the budget");
  }

  const std::size_t stepLimit = budget * 4 + 1024;
  std::size_t steps = 0;
  std::size_t atomsEmitted = 0;
  std::vector<Rule> out;

  const std::vector<Rule> all = all_rules(p);
  for (const Rule& r : all) {
    const std::vector<std::string> vars = rule_variables(r);
    std::vector<std::size_t> pick(vars.size(), 0);
    // Odometer over variable assignments into the universe.
    while (true) {
      if (++steps > stepLimit)
        throw std::runtime_error("ground_program: instance budget exceeded");
      Substitution s;
      for (std::size_t i = 0; i < vars.size(); ++i)
        s.emplace(vars[i], universe[pick[i]]);
      Rule inst;
      inst.origin = r.origin;
      bool inRange = true;
      auto push = [&](const std::vector<Atom>& from, std::vector<Atom>& to) {
        for (const auto& a : from) {
          Atom g = apply_substitution(a, s);
          if (atom_depth(g) > maxDepth) {
            inRange = false;
            return;
          }
          to.push_back(std::move(g));
        }
      };
      push(r.body, inst.body);
      if (inRange) push(r.head, inst.head);
      if (inRange) {
        atomsEmitted += inst.body.size() + inst.head.size();
        if (atomsEmitted > budget)
          throw std::runtime_error("ground_program: atom budget exceeded");
        out.push_back(std::move(inst));
      }
      // advance odometer
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < universe.size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;  // wrapped around (or no variables)
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trace validation
// ---------------------------------------------------------------------------

namespace {

struct TraceTables {
  std::map<std::string, Predicate> preds;
  std::map<std::string, FunctionSymbol> fns;
  std::set<std::string> constants;
  std::map<std::string, const Rule*> rules;
};

TraceTables trace_tables(const Program& p, const Dataset& d) {
  TraceTables t;
  for (const auto& pred : p.signature.predicates) t.preds.emplace(pred.text(), pred);
  t.preds.emplace(Predicate::top().text(), Predicate::top());
  t.preds.emplace(Predicate::bot().text(), Predicate::bot());
  t.preds.emplace(Predicate::eq().text(), Predicate::eq());
  for (const auto& f : d.facts) {
    const Atom a = fact_atom(f);
    t.preds.emplace(a.pred.text(), a.pred);
  }
  for (const auto& f : p.signature.functions) t.fns.emplace(f.text(), f);
  t.constants = known_constants(p, d);
  for (const auto& ir : index_rules(p)) t.rules.emplace(ir.ref, ir.rule);
  return t;
}

// Splits on a separator at paren depth zero.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::optional<Term> parse_trace_term(const std::string& text,
                                     const TraceTables& t,
                                     std::string* err) {
  const std::string s = trim(text);
  const std::size_t open = s.find('(');
  if (open == std::string::npos) {
    if (!t.constants.count(s)) {
      *err = "unknown constant '" + s + "'";
      return std::nullopt;
    }
    return Term::constant(s);
  }
  if (s.empty() || s.back() != ')') {
    *err = "malformed term '" + s + "'";
    return std::nullopt;
  }
  const std::string fnText = s.substr(0, open);
  auto it = t.fns.find(fnText);
  if (it == t.fns.end()) {
    *err = "unknown function symbol '" + fnText + "'";
    return std::nullopt;
  }
  auto inner =
      parse_trace_term(s.substr(open + 1, s.size() - open - 2), t, err);
  if (!inner) return std::nullopt;
  return Term::app(it->second, *inner);
}

std::optional<Atom> parse_trace_atom(const std::string& text,
                                     const TraceTables& t, std::string* err) {
  const std::string s = trim(text);
  const std::size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    *err = "malformed atom '" + s + "'";
    return std::nullopt;
  }
  const std::string predText = s.substr(0, open);
  auto it = t.preds.find(predText);
  if (it == t.preds.end()) {
    *err = "unknown predicate '" + predText + "'";
    return std::nullopt;
  }
  Atom a;
  a.pred = it->second;
  for (const auto& part :
       split_top(s.substr(open + 1, s.size() - open - 2), ',')) {
    auto term = parse_trace_term(part, t, err);
    if (!term) return std::nullopt;
    a.args.push_back(*term);
  }
  if (a.args.size() != a.pred.arity()) {
    *err = "arity mismatch in atom '" + s + "'";
    return std::nullopt;
  }
  return a;
}

}  // namespace

std::optional<std::string> validate_trace(const Program& p, const Dataset& d,
                                          const std::string& trace) {
  const TraceTables tables = trace_tables(p, d);
  std::map<int, std::set<Atom>> clauses;  // step id -> clause
  int lastId = -1;
  bool sawEmpty = false;
  int lineNo = 0;

  std::istringstream in(trace);
  std::string line;
  while (std::getline(in, line)) {
    ++lineNo;
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) {
      return "line " + std::to_string(lineNo) + ": " + msg;
    };

    if (line.size() < 4 || line[0] != '[' || line[1] != 's')
      return fail("expected '[sN]' step label");
    const std::size_t close = line.find(']');
    if (close == std::string::npos) return fail("unterminated step label");
    int id = 0;
    try {
      id = std::stoi(line.substr(2, close - 2));
    } catch (...) {
      return fail("bad step id");
    }
    if (clauses.count(id)) return fail("duplicate step id");

    const std::size_t arrow = line.find(" <- ", close);
    if (arrow == std::string::npos) return fail("missing '<-'");
    const std::string clausePart = trim(line.substr(close + 1, arrow - close - 1));
    const std::string just = trim(line.substr(arrow + 4));

    std::set<Atom> clause;
    if (clausePart != "empty") {
      for (const auto& part : split_top(clausePart, '|')) {
        std::string err;
        auto atom = parse_trace_atom(part, tables, &err);
        if (!atom) return fail(err);
        if (!atom_ground(*atom)) return fail("non-ground clause atom");
        clause.insert(*atom);
      }
      if (clause.empty()) return fail("empty clause must be written 'empty'");
    }

    if (just.rfind("fact ", 0) == 0) {
      int k = -1;
      try {
        k = std::stoi(just.substr(5));
      } catch (...) {
        return fail("bad fact index");
      }
      if (k < 0 || (std::size_t)k >= d.facts.size())
        return fail("fact index out of range");
      if (clause != std::set<Atom>{fact_atom(d.facts[k])})
        return fail("fact step clause does not match the dataset fact");
    } else if (just.rfind("active ", 0) == 0) {
      const std::string c = trim(just.substr(7));
      if (!tables.constants.count(c)) return fail("unknown constant in 'active'");
      const Atom top{Predicate::top(), {Term::constant(c)}};
      if (clause != std::set<Atom>{top})
        return fail("active step clause must be the Top atom of its constant");
    } else if (just.rfind("rule ", 0) == 0) {
      std::string rest = just.substr(5);
      const std::size_t sp = rest.find(' ');
      if (sp == std::string::npos) return fail("missing substitution");
      const std::string ref = rest.substr(0, sp);
      auto rit = tables.rules.find(ref);
      if (rit == tables.rules.end()) return fail("unknown rule '" + ref + "'");
      const Rule& rule = *rit->second;
      rest = trim(rest.substr(sp + 1));
      if (rest.empty() || rest[0] != '{') return fail("missing substitution");
      const std::size_t closeBrace = rest.find('}');
      if (closeBrace == std::string::npos) return fail("unterminated substitution");
      Substitution subst;
      const std::string inside = rest.substr(1, closeBrace - 1);
      if (!trim(inside).empty()) {
        for (const auto& entry : split_top(inside, ',')) {
          const std::size_t arrowPos = entry.find("->");
          if (arrowPos == std::string::npos)
            return fail("malformed substitution entry");
          const std::string var = trim(entry.substr(0, arrowPos));
          std::string err;
          auto term = parse_trace_term(entry.substr(arrowPos + 2), tables, &err);
          if (!term) return fail(err);
          if (!subst.emplace(var, *term).second)
            return fail("duplicate substitution entry");
        }
      }
      std::string fromPart = trim(rest.substr(closeBrace + 1));
      if (fromPart.rfind("from", 0) != 0) return fail("missing 'from'");
      fromPart = trim(fromPart.substr(4));
      std::vector<std::pair<int, Atom>> premises;
      if (fromPart != "-") {
        for (const auto& entry : split_top(fromPart, ',')) {
          const std::string e = trim(entry);
          if (e.size() < 4 || e[0] != '[' || e[1] != 's')
            return fail("malformed premise reference");
          const std::size_t cb = e.find("]:");
          if (cb == std::string::npos) return fail("malformed premise reference");
          int ref2 = 0;
          try {
            ref2 = std::stoi(e.substr(2, cb - 2));
          } catch (...) {
            return fail("bad premise step id");
          }
          if (!clauses.count(ref2))
            return fail("premise step not defined earlier");
          std::string err;
          auto atom = parse_trace_atom(e.substr(cb + 2), tables, &err);
          if (!atom) return fail(err);
          premises.emplace_back(ref2, *atom);
        }
      }
      if (premises.size() != rule.body.size())
        return fail("premise count does not match rule body");
      std::set<Atom> expected;
      for (const auto& h : rule.head) {
        Atom g = apply_substitution(h, subst);
        if (!atom_ground(g)) return fail("substitution leaves head non-ground");
        expected.insert(std::move(g));
      }
      for (std::size_t i = 0; i < premises.size(); ++i) {
        Atom g = apply_substitution(rule.body[i], subst);
        if (!atom_ground(g)) return fail("substitution leaves body non-ground");
        if (!(g == premises[i].second))
          return fail("premise atom does not match the instantiated body");
        const auto& premClause = clauses.at(premises[i].first);
        if (!premClause.count(g))
          return fail("premise clause does not contain the resolved atom");
        for (const auto& side : premClause)
          if (!(side == g)) expected.insert(side);
      }
      if (expected != clause)
        return fail("conclusion clause is not the hyperresolvent");
    } else {
      return fail("unknown justification");
    }

    clauses.emplace(id, std::move(clause));
    lastId = id;
    sawEmpty = clauses.at(id).empty();
  }

  if (lastId < 0) return "trace is empty";
  if (!sawEmpty) return "final step does not derive the empty clause";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Differential equisatisfiability
// ---------------------------------------------------------------------------

EquisatReport check_equisat(const Ontology& o, const Dataset& d,
                            const SatOptions& opts) {
  EquisatReport rep;
  const Ontology norm = is_normal_form(o) ? o : normalize_ontology(o);
  rep.original = check_sat_disjunctive(pi_translate(norm), d, opts);
  rep.viaXi = check_sat_disjunctive(xi_translate(norm), d, opts);

  RewriteOutcome rw = rewrite_ontology(norm);
  rep.markable = rw.markable;
  std::vector<SatStatus> legs{rep.original.status, rep.viaXi.status};
  if (rw.markable) {
    const Ontology rnorm = is_normal_form(rw.rewritten)
                               ? rw.rewritten
                               : normalize_ontology(rw.rewritten);
    rep.rewritten = saturate_horn(pi_translate(rnorm), d, opts);
    legs.push_back(rep.rewritten->status);
  }

  bool anyBounded = false;
  bool anySat = false;
  bool anyUnsat = false;
  for (SatStatus s : legs) {
    if (s == SatStatus::SatBounded) anyBounded = true;
    if (s == SatStatus::Sat) anySat = true;
    if (s == SatStatus::Unsat) anyUnsat = true;
  }
  if (anySat && anyUnsat)
    rep.verdict = Verdict::Disagree;
  else if (anyBounded)
    rep.verdict = Verdict::Inconclusive;
  else
    rep.verdict = Verdict::Agree;
  return rep;
}

}  // namespace hornify
