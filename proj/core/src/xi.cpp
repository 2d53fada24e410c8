#include "hornify/xi.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hornify {

PhiSet phi_set(const Ontology& o) {
  std::set<FunctionSymbol> s;
  for (const auto& a : o.axioms) {
    const auto* g = std::get_if<GCI>(&a);
    if (g && g->rhs.kind == Rhs::Kind::Some)
      s.insert(FunctionSymbol::indexed(g->rhs.role, g->rhs.filler));
  }
  return PhiSet(s.begin(), s.end());
}

namespace {

Term fapp(const FunctionSymbol& f, const Term& t) { return Term::app(f, t); }

// Filler atom of a successor function: the concept written at the successor
// when the function is introduced; used as an activation guard.
Atom filler_atom(const FunctionSymbol& f, const Term& t) {
  return concept_atom(f.filler, t);
}

}  // namespace

Program xi_translate(const Ontology& o, const SigmaOptions& opts) {
  if (!is_normal_form(o))
    throw std::invalid_argument(
        "xi_translate requires a normal-form ontology (run normalization "
        "first)");

  const PhiSet phi = phi_set(o);
  const SubroleClosure closure = subrole_closure(o);
  std::vector<Rule> core;
  auto dedup = [](std::vector<Atom>& atoms) {
    std::vector<Atom> kept;
    for (auto& a : atoms)
      if (std::find(kept.begin(), kept.end(), a) == kept.end())
        kept.push_back(std::move(a));
    atoms = std::move(kept);
  };
  auto emit = [&](Rule r) {
    r.origin = RuleOrigin::Xi;
    dedup(r.body);
    dedup(r.head);
    core.push_back(std::move(r));
  };
  auto emit_pi = [&](const Axiom& a, int idx) {
    for (auto& r : pi_axiom_rules(a, idx)) emit(std::move(r));
  };

  const Term x = Term::var("x"), y = Term::var("y"), z = Term::var("z");

  for (size_t i = 0; i < o.axioms.size(); ++i) {
    const Axiom& axiom = o.axioms[i];
    const int idx = static_cast<int>(i);
    switch (axiom_type(axiom)) {
      case AxiomType::T1:
      case AxiomType::T5:
        emit_pi(axiom, idx);
        break;

      case AxiomType::T3: {
        // A ⊑ ∃R.B becomes A(x) → B(f_{R,B}(x)): the successor function
        // replaces the role atom entirely.
        const GCI& g = std::get<GCI>(axiom);
        auto f = FunctionSymbol::indexed(g.rhs.role, g.rhs.filler);
        Rule r;
        r.body.push_back(concept_atom(g.lhs.names[0], x));
        r.head.push_back(filler_atom(f, fapp(f, x)));
        emit(std::move(r));
        break;
      }

      case AxiomType::T2: {
        // ∃R.A ⊑ C, instantiated over each successor function whose role
        // reaches R in the hierarchy: forward for f itself an R-successor,
        // inverse for x an R-successor of f(x).
        const GCI& g = std::get<GCI>(axiom);
        const Role& R = g.lhs.exists[0].role;
        const ConceptName& A = g.lhs.exists[0].filler[0];
        const ConceptName& C = g.rhs.names[0];
        emit_pi(axiom, idx);
        for (const auto& f : phi) {
          if (!closure.contains(f.role, R)) continue;
          Rule r;
          r.body.push_back(concept_atom(A, fapp(f, x)));
          r.head.push_back(concept_atom(C, x));
          emit(std::move(r));
        }
        for (const auto& f : phi) {
          if (!closure.contains(f.role.inverse(), R)) continue;
          Rule r;
          r.body.push_back(concept_atom(A, x));
          r.body.push_back(filler_atom(f, fapp(f, x)));
          r.head.push_back(concept_atom(C, fapp(f, x)));
          emit(std::move(r));
        }
        break;
      }

      case AxiomType::T4: {
        // A ⊑ ∀R.C over successor functions, mirroring the T2 cases.
        const GCI& g = std::get<GCI>(axiom);
        const ConceptName& A = g.lhs.names[0];
        const Role& R = g.rhs.role;
        const ConceptName& C = g.rhs.filler;
        emit_pi(axiom, idx);
        for (const auto& f : phi) {
          if (!closure.contains(f.role.inverse(), R)) continue;
          Rule r;
          r.body.push_back(concept_atom(A, fapp(f, x)));
          r.head.push_back(concept_atom(C, x));
          emit(std::move(r));
        }
        for (const auto& f : phi) {
          if (!closure.contains(f.role, R)) continue;
          Rule r;
          r.body.push_back(concept_atom(A, x));
          r.body.push_back(filler_atom(f, fapp(f, x)));
          r.head.push_back(concept_atom(C, fapp(f, x)));
          emit(std::move(r));
        }
        break;
      }

      case AxiomType::T6: {
        // A ⊑ ≤1 R.B: the functionality clash between role successors and
        // function-symbol successors, in all four combinations.
        const GCI& g = std::get<GCI>(axiom);
        const ConceptName& A = g.lhs.names[0];
        const Role& R = g.rhs.role;
        const ConceptName& B = g.rhs.filler;
        emit_pi(axiom, idx);
        auto eq = [](Term a, Term b) {
          return Atom(Predicate::eq(), {std::move(a), std::move(b)});
        };
        // successor function vs role edge
        for (const auto& f : phi) {
          if (!closure.contains(f.role, R)) continue;
          Rule r;
          r.body.push_back(concept_atom(A, z));
          r.body.push_back(concept_atom(B, fapp(f, z)));
          r.body.push_back(make_role_atom(R, z, x));
          r.body.push_back(concept_atom(B, x));
          r.head.push_back(eq(fapp(f, z), x));
          emit(std::move(r));
        }
        // inverse successor: x and y are both R-successors of f(x)
        for (const auto& f : phi) {
          if (!closure.contains(f.role.inverse(), R)) continue;
          Rule r;
          r.body.push_back(concept_atom(A, fapp(f, x)));
          r.body.push_back(concept_atom(B, x));
          r.body.push_back(make_role_atom(R, fapp(f, x), y));
          r.body.push_back(concept_atom(B, y));
          r.head.push_back(eq(x, y));
          emit(std::move(r));
        }
        // two successor functions on the same parent
        for (const auto& f1 : phi) {
          if (!closure.contains(f1.role, R)) continue;
          for (const auto& f2 : phi) {
            if (!closure.contains(f2.role, R)) continue;
            Rule r;
            r.body.push_back(concept_atom(A, z));
            r.body.push_back(concept_atom(B, fapp(f1, z)));
            r.body.push_back(concept_atom(B, fapp(f2, z)));
            r.head.push_back(eq(fapp(f1, z), fapp(f2, z)));
            emit(std::move(r));
          }
        }
        // inverse successor vs successor-of-successor
        for (const auto& f1 : phi) {
          if (!closure.contains(f1.role.inverse(), R)) continue;
          for (const auto& f2 : phi) {
            if (!closure.contains(f2.role, R)) continue;
            Rule r;
            const Term f1x = fapp(f1, x);
            r.body.push_back(concept_atom(A, f1x));
            r.body.push_back(concept_atom(B, x));
            r.body.push_back(concept_atom(B, fapp(f2, f1x)));
            r.head.push_back(eq(x, fapp(f2, f1x)));
            emit(std::move(r));
          }
        }
        break;
      }

      default:
        throw std::invalid_argument("xi_translate: unexpected general axiom");
    }
  }
  return make_program(std::move(core), opts);
}

}  // namespace hornify
