#include "hornify/marking.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace hornify {

std::vector<Rule> marking_rules(const Program& p) {
  std::vector<Rule> out = p.core;
  out.insert(out.end(), p.sigmaBot.begin(), p.sigmaBot.end());
  out.insert(out.end(), p.sigmaEq.begin(), p.sigmaEq.end());
  return out;
}

std::optional<size_t> DependencyGraph::vertex_index(const Predicate& p) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
  if (it == vertices.end() || *it != p) return std::nullopt;
  return static_cast<size_t>(it - vertices.begin());
}

std::vector<bool> DependencyGraph::reachable_from(size_t v) const {
  std::vector<bool> seen(vertices.size(), false);
  std::vector<size_t> stack{v};
  seen[v] = true;
  while (!stack.empty()) {
    size_t cur = stack.back();
    stack.pop_back();
    for (size_t eid : out[cur]) {
      size_t nxt = edges[eid].to;
      if (!seen[nxt]) {
        seen[nxt] = true;
        stack.push_back(nxt);
      }
    }
  }
  return seen;
}

DependencyGraph dependency_graph(const Program& p) {
  const auto rules = marking_rules(p);
  std::set<Predicate> verts;
  for (const auto& r : rules)
    for (const auto* atoms : {&r.body, &r.head})
      for (const auto& a : *atoms)
        if (a.pred.kind != Predicate::Kind::Top) verts.insert(a.pred);

  DependencyGraph g;
  g.vertices.assign(verts.begin(), verts.end());
  g.out.resize(g.vertices.size());
  std::set<std::tuple<size_t, size_t, size_t>> seen;
  for (size_t rid = 0; rid < rules.size(); ++rid) {
    const Rule& r = rules[rid];
    const bool nonHorn = r.head.size() > 1;
    for (const auto& b : r.body) {
      if (b.pred.kind == Predicate::Kind::Top) continue;
      size_t from = *g.vertex_index(b.pred);
      for (const auto& h : r.head) {
        if (h.pred.kind == Predicate::Kind::Top) continue;
        size_t to = *g.vertex_index(h.pred);
        if (!seen.insert({from, to, rid}).second) continue;
        g.out[from].push_back(g.edges.size());
        g.edges.push_back(DependencyEdge{from, to, rid, nonHorn});
      }
    }
  }
  return g;
}

PredicateClass classify_predicates(const Program& p) {
  const DependencyGraph g = dependency_graph(p);
  std::vector<bool> disj(g.vertices.size(), false);
  std::vector<size_t> stack;
  for (const auto& e : g.edges)
    if (e.nonHorn && !disj[e.to]) {
      disj[e.to] = true;
      stack.push_back(e.to);
    }
  while (!stack.empty()) {
    size_t cur = stack.back();
    stack.pop_back();
    for (size_t eid : g.out[cur]) {
      size_t nxt = g.edges[eid].to;
      if (!disj[nxt]) {
        disj[nxt] = true;
        stack.push_back(nxt);
      }
    }
  }
  PredicateClass out;
  std::set<Predicate> disjSet;
  for (size_t i = 0; i < g.vertices.size(); ++i)
    if (disj[i]) disjSet.insert(g.vertices[i]);
  for (const auto& pred : p.signature.predicates)
    (disjSet.count(pred) ? out.disjunctive : out.horn).push_back(pred);
  // Graph vertices outside the signature cannot occur; signature predicates
  // outside the graph (only True) are Horn.
  return out;
}

// ---------------------------------------------------------------------------
// Marking validity
// ---------------------------------------------------------------------------

namespace {

bool contains(const Marking& m, const Predicate& p) {
  return std::binary_search(m.begin(), m.end(), p);
}

}  // namespace

MarkingCheck is_marking(const Program& p, const Marking& m) {
  MarkingCheck out;
  Marking sorted = m;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const PredicateClass cls = classify_predicates(p);
  for (const auto& pred : sorted)
    if (!std::binary_search(cls.disjunctive.begin(), cls.disjunctive.end(),
                            pred))
      out.violations.push_back("marked predicate is not disjunctive: " +
                               pred.text());

  const auto rules = marking_rules(p);
  for (const auto& r : rules) {
    int markedBody = 0;
    for (const auto& a : r.body)
      if (contains(sorted, a.pred)) ++markedBody;
    if (markedBody > 1)
      out.violations.push_back("more than one marked body atom: " + r.text());
    int unmarkedHead = 0;
    bool topHead = false;
    for (const auto& a : r.head) {
      if (a.pred.kind == Predicate::Kind::Top) topHead = true;
      if (!contains(sorted, a.pred)) ++unmarkedHead;
    }
    if (unmarkedHead > 1)
      out.violations.push_back("more than one unmarked head atom: " +
                               r.text());
    // A True head is trivially satisfied and cannot be contraposed, so the
    // rule must keep its body unmarked.
    if (topHead && markedBody > 0)
      out.violations.push_back("marked body atom in a rule with a True head: " +
                               r.text());
  }

  const DependencyGraph g = dependency_graph(p);
  for (const auto& e : g.edges) {
    if (contains(sorted, g.vertices[e.from]) &&
        !contains(sorted, g.vertices[e.to]))
      out.violations.push_back(
          "marking not closed under dependencies: " +
          g.vertices[e.from].text() + " -> " + g.vertices[e.to].text() +
          " via " + rules[e.ruleId].text());
  }
  out.ok = out.violations.empty();
  return out;
}

// ---------------------------------------------------------------------------
// 2-SAT encoding
// ---------------------------------------------------------------------------

TwoSatInstance encode_2sat(const Program& p) {
  TwoSatInstance inst;
  const PredicateClass cls = classify_predicates(p);
  inst.variables = cls.disjunctive;
  std::map<Predicate, int> varOf;
  for (size_t i = 0; i < inst.variables.size(); ++i)
    varOf[inst.variables[i]] = static_cast<int>(i);

  auto positive = [&](const Predicate& pred) {
    auto it = varOf.find(pred);
    if (it == varOf.end()) return TwoSatLiteral{-1, false, true};
    return TwoSatLiteral{it->second, false, false};
  };
  auto negative = [](TwoSatLiteral l) {
    l.negated = !l.negated;
    return l;
  };

  for (const auto& r : marking_rules(p)) {
    std::vector<TwoSatLiteral> bodyDisj;
    for (const auto& a : r.body) {
      auto it = varOf.find(a.pred);
      if (it != varOf.end())
        bodyDisj.push_back(TwoSatLiteral{it->second, false, false});
    }
    // (i) at most one marked body atom
    for (size_t i = 0; i < bodyDisj.size(); ++i)
      for (size_t j = i + 1; j < bodyDisj.size(); ++j)
        inst.clauses.push_back(
            TwoSatClause{negative(bodyDisj[i]), negative(bodyDisj[j])});
    // (ii) at most one unmarked head atom (Horn heads are constant-false)
    for (size_t i = 0; i < r.head.size(); ++i)
      for (size_t j = i + 1; j < r.head.size(); ++j)
        inst.clauses.push_back(TwoSatClause{positive(r.head[i].pred),
                                            positive(r.head[j].pred)});
    // (iii) closure along edges from marked body predicates; a True head
    // forces the body unmarked instead (it cannot be contraposed)
    const bool topHead =
        std::any_of(r.head.begin(), r.head.end(), [](const Atom& a) {
          return a.pred.kind == Predicate::Kind::Top;
        });
    for (const auto& b : bodyDisj)
      for (const auto& h : r.head) {
        if (h.pred.kind == Predicate::Kind::Top) continue;  // no vertex
        inst.clauses.push_back(TwoSatClause{negative(b), positive(h.pred)});
      }
    if (topHead)
      for (const auto& b : bodyDisj)
        inst.clauses.push_back(
            TwoSatClause{negative(b), TwoSatLiteral{-1, false, true}});
  }
  return inst;
}

namespace {

// Iterative Tarjan SCC over the implication graph.
class TarjanScc {
 public:
  explicit TarjanScc(const std::vector<std::vector<int>>& adj)
      : adj_(adj),
        index_(adj.size(), -1),
        low_(adj.size(), 0),
        onStack_(adj.size(), false),
        comp_(adj.size(), -1) {
    for (size_t v = 0; v < adj.size(); ++v)
      if (index_[v] == -1) run(static_cast<int>(v));
  }

  const std::vector<int>& components() const { return comp_; }

 private:
  void run(int root) {
    struct Frame {
      int v;
      size_t child;
    };
    std::vector<Frame> frames{{root, 0}};
    while (!frames.empty()) {
      auto& [v, child] = frames.back();
      if (child == 0) {
        index_[v] = low_[v] = counter_++;
        stack_.push_back(v);
        onStack_[v] = true;
      }
      if (child < adj_[v].size()) {
        int w = adj_[v][child++];
        if (index_[w] == -1) {
          frames.push_back({w, 0});
        } else if (onStack_[w]) {
          low_[v] = std::min(low_[v], index_[w]);
        }
        continue;
      }
      if (low_[v] == index_[v]) {
        while (true) {
          int w = stack_.back();
          stack_.pop_back();
          onStack_[w] = false;
          comp_[w] = compCount_;
          if (w == v) break;
        }
        ++compCount_;
      }
      int finished = v;
      frames.pop_back();
      if (!frames.empty())
        low_[frames.back().v] = std::min(low_[frames.back().v],
                                         low_[finished]);
    }
  }

  const std::vector<std::vector<int>>& adj_;
  std::vector<int> index_, low_;
  std::vector<bool> onStack_;
  std::vector<int> comp_;
  std::vector<int> stack_;
  int counter_ = 0;
  int compCount_ = 0;
};

}  // namespace

std::optional<std::vector<bool>> solve_2sat(const TwoSatInstance& inst) {
  const size_t n = inst.variables.size();
  // Node 2v: variable v true; node 2v+1: variable v false.
  auto node = [](const TwoSatLiteral& l) { return 2 * l.var + (l.negated ? 1 : 0); };
  auto comp_node = [](const TwoSatLiteral& l) { return 2 * l.var + (l.negated ? 0 : 1); };

  std::vector<std::vector<int>> adj(2 * n);
  auto add_implication = [&](int from, int to) { adj[from].push_back(to); };
  for (const auto& c : inst.clauses) {
    const bool aFalse = c.a.constantFalse;
    const bool bFalse = c.b.constantFalse;
    if (aFalse && bFalse) return std::nullopt;  // unsatisfiable clause
    if (aFalse || bFalse) {
      const TwoSatLiteral& unit = aFalse ? c.b : c.a;
      add_implication(comp_node(unit), node(unit));
      continue;
    }
    add_implication(comp_node(c.a), node(c.b));
    add_implication(comp_node(c.b), node(c.a));
  }

  TarjanScc scc(adj);
  const auto& comp = scc.components();
  std::vector<bool> assignment(n);
  for (size_t v = 0; v < n; ++v) {
    if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
    // Tarjan numbers components sinks-first; pick the topologically later one.
    assignment[v] = comp[2 * v] < comp[2 * v + 1];
  }
  return assignment;
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

std::optional<Marking> find_marking(const Program& p) {
  const TwoSatInstance inst = encode_2sat(p);
  auto assignment = solve_2sat(inst);
  if (!assignment) return std::nullopt;
  Marking m;
  for (size_t v = 0; v < inst.variables.size(); ++v)
    if ((*assignment)[v]) m.push_back(inst.variables[v]);
  std::sort(m.begin(), m.end());
  assert(is_marking(p, m).ok);
  return m;
}

Marking minimize_marking(const Program& p, const Marking& marking) {
  Marking m = marking;
  std::sort(m.begin(), m.end());
  const DependencyGraph g = dependency_graph(p);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& q : m) {
      auto qi = g.vertex_index(q);
      Marking candidate;
      for (const auto& pred : m) {
        // Drop every marked predicate that reaches q (including q itself);
        // closure of the remainder is preserved by construction.
        auto pi = g.vertex_index(pred);
        bool reachesQ =
            pred == q || (pi && qi && g.reachable_from(*pi)[*qi]);
        if (!reachesQ) candidate.push_back(pred);
      }
      if (is_marking(p, candidate).ok) {
        m = candidate;
        changed = true;
        break;  // rescan from the smallest predicate of the new marking
      }
    }
  }
  return m;
}

std::vector<Marking> enumerate_markings(const Program& p, size_t cap) {
  const PredicateClass cls = classify_predicates(p);
  const auto& d = cls.disjunctive;
  if (d.size() > cap)
    throw std::runtime_error(
        "enumerate_markings: " + std::to_string(d.size()) +
        " disjunctive predicates exceed the cap of " + std::to_string(cap));
  std::vector<Marking> out;
  for (size_t mask = 0; mask < (size_t{1} << d.size()); ++mask) {
    Marking m;
    for (size_t i = 0; i < d.size(); ++i)
      if (mask & (size_t{1} << i)) m.push_back(d[i]);
    if (is_marking(p, m).ok) out.push_back(std::move(m));
  }
  return out;
}

std::string marking_text(const Marking& m) {
  std::vector<std::string> names;
  bool hasBot = false;
  for (const auto& p : m) {
    if (p.kind == Predicate::Kind::Bot)
      hasBot = true;
    else
      names.push_back(p.text());
  }
  std::sort(names.begin(), names.end());
  if (hasBot) names.push_back("Bot");
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out;
}

Marking parse_marking(const std::string& text, const Program& p) {
  Marking m;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = comma == std::string::npos
                          ? text.substr(pos)
                          : text.substr(pos, comma - pos);
    size_t a = tok.find_first_not_of(" \t");
    if (a != std::string::npos) {
      size_t b = tok.find_last_not_of(" \t");
      tok = tok.substr(a, b - a + 1);
    } else {
      tok.clear();
    }
    if (!tok.empty()) {
      if (tok.compare(0, 4, "not_") == 0)
        throw std::runtime_error(
            "complement predicates cannot be marked: " + tok);
      if (tok == "Bot") {
        m.push_back(Predicate::bot());
      } else if (tok == "Eq" || tok == "True" || tok == "Top") {
        throw std::runtime_error("predicate cannot be marked: " + tok);
      } else {
        bool found = false;
        for (const auto& pred : p.signature.predicates)
          if (pred.is_ordinary() && pred.name == tok) {
            m.push_back(pred);
            found = true;
            break;
          }
        if (!found)
          throw std::runtime_error("unknown predicate in marking: " + tok);
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

}  // namespace hornify
