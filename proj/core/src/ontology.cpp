#include "hornify/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hornify {

namespace {

void sort_dedup_names(std::vector<ConceptName>& v) {
  std::sort(v.begin(), v.end(), concept_text_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void canonicalize(Lhs& lhs) {
  sort_dedup_names(lhs.names);
  for (auto& e : lhs.exists) sort_dedup_names(e.filler);
  std::sort(lhs.exists.begin(), lhs.exists.end());
  lhs.exists.erase(std::unique(lhs.exists.begin(), lhs.exists.end()),
                   lhs.exists.end());
}

void canonicalize(Rhs& rhs) {
  if (rhs.kind == Rhs::Kind::Union) sort_dedup_names(rhs.names);
}

}  // namespace

bool operator==(const Axiom& a, const Axiom& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<GCI>(a))
    return std::get<GCI>(a) == std::get<GCI>(b);
  return std::get<SubRole>(a) == std::get<SubRole>(b);
}

Axiom make_t1(std::vector<ConceptName> lhs, std::vector<ConceptName> rhs) {
  GCI g;
  g.lhs.names = std::move(lhs);
  g.rhs.kind = Rhs::Kind::Union;
  g.rhs.names = std::move(rhs);
  canonicalize(g.lhs);
  canonicalize(g.rhs);
  return g;
}

Axiom make_t2(Role r, ConceptName filler, ConceptName rhs) {
  GCI g;
  g.lhs.exists.push_back(ExistsConjunct{std::move(r), {std::move(filler)}});
  g.rhs = Rhs::single(std::move(rhs));
  return g;
}

Axiom make_t3(ConceptName lhs, Role r, ConceptName filler) {
  GCI g;
  g.lhs.names.push_back(std::move(lhs));
  g.rhs.kind = Rhs::Kind::Some;
  g.rhs.role = std::move(r);
  g.rhs.filler = std::move(filler);
  return g;
}

Axiom make_t4(ConceptName lhs, Role r, ConceptName filler) {
  GCI g;
  g.lhs.names.push_back(std::move(lhs));
  g.rhs.kind = Rhs::Kind::All;
  g.rhs.role = std::move(r);
  g.rhs.filler = std::move(filler);
  return g;
}

Axiom make_t5(std::string sub, Role sup) {
  return SubRole{std::move(sub), std::move(sup)};
}

Axiom make_t6(ConceptName lhs, Role r, ConceptName filler) {
  GCI g;
  g.lhs.names.push_back(std::move(lhs));
  g.rhs.kind = Rhs::Kind::AtMost1;
  g.rhs.role = std::move(r);
  g.rhs.filler = std::move(filler);
  return g;
}

AxiomType axiom_type(const Axiom& axiom) {
  if (std::holds_alternative<SubRole>(axiom)) return AxiomType::T5;
  const GCI& g = std::get<GCI>(axiom);
  const bool plain_lhs = g.lhs.exists.empty() && !g.lhs.names.empty();
  const bool single_lhs = plain_lhs && g.lhs.names.size() == 1;
  switch (g.rhs.kind) {
    case Rhs::Kind::Union:
      if (plain_lhs) return AxiomType::T1;
      if (g.lhs.names.empty() && g.lhs.exists.size() == 1 &&
          g.lhs.exists[0].filler.size() == 1 && g.rhs.names.size() == 1)
        return AxiomType::T2;
      return AxiomType::General;
    case Rhs::Kind::Some:
      return single_lhs ? AxiomType::T3 : AxiomType::General;
    case Rhs::Kind::All:
      return single_lhs ? AxiomType::T4 : AxiomType::General;
    case Rhs::Kind::AtMost1:
      return single_lhs ? AxiomType::T6 : AxiomType::General;
  }
  return AxiomType::General;
}

const char* to_string(AxiomType t) {
  switch (t) {
    case AxiomType::T1: return "T1";
    case AxiomType::T2: return "T2";
    case AxiomType::T3: return "T3";
    case AxiomType::T4: return "T4";
    case AxiomType::T5: return "T5";
    case AxiomType::T6: return "T6";
    default: return "general";
  }
}

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

namespace {

template <typename ConceptFn, typename RoleFn>
void visit_names(const Axiom& axiom, ConceptFn onConcept, RoleFn onRole) {
  if (const auto* sr = std::get_if<SubRole>(&axiom)) {
    onRole(Role{sr->sub});
    onRole(sr->sup);
    return;
  }
  const GCI& g = std::get<GCI>(axiom);
  for (const auto& n : g.lhs.names) onConcept(n);
  for (const auto& e : g.lhs.exists) {
    onRole(e.role);
    for (const auto& f : e.filler) onConcept(f);
  }
  if (g.rhs.kind == Rhs::Kind::Union) {
    for (const auto& n : g.rhs.names) onConcept(n);
  } else {
    onRole(g.rhs.role);
    onConcept(g.rhs.filler);
  }
}

}  // namespace

std::set<std::string> Ontology::concept_names() const {
  std::set<std::string> out;
  for (const auto& a : axioms)
    visit_names(
        a,
        [&](const ConceptName& c) {
          if (c.is_named()) out.insert(c.id);
        },
        [](const Role&) {});
  return out;
}

std::set<std::string> Ontology::role_names() const {
  std::set<std::string> out;
  for (const auto& a : axioms)
    visit_names(a, [](const ConceptName&) {},
                [&](const Role& r) { out.insert(r.base); });
  return out;
}

bool Ontology::mentions_inverse() const {
  bool found = false;
  for (const auto& a : axioms)
    visit_names(a, [](const ConceptName&) {},
                [&](const Role& r) { found = found || r.inverted; });
  return found;
}

bool is_horn_ontology(const Ontology& o) {
  for (const auto& a : o.axioms) {
    const auto* g = std::get_if<GCI>(&a);
    if (g && g->rhs.kind == Rhs::Kind::Union && g->rhs.names.size() > 1)
      return false;
  }
  return true;
}

bool is_normal_form(const Ontology& o) {
  for (const auto& a : o.axioms)
    if (axiom_type(a) == AxiomType::General) return false;
  return true;
}

std::set<std::string> Dataset::constants() const {
  std::set<std::string> out;
  for (const auto& f : facts) {
    out.insert(f.c1);
    if (f.binary) out.insert(f.c2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

DLProfile profile_of(const Ontology& o) {
  DLProfile p;
  bool universal = false;
  for (const auto& a : o.axioms) {
    if (std::holds_alternative<SubRole>(a)) p.hierarchy = true;
    const auto* g = std::get_if<GCI>(&a);
    if (g) {
      if (g->rhs.kind == Rhs::Kind::All) universal = true;
      if (g->rhs.kind == Rhs::Kind::AtMost1) p.functionality = true;
    }
    visit_names(a, [](const ConceptName&) {},
                [&](const Role& r) { p.inverse = p.inverse || r.inverted; });
  }
  p.horn = is_horn_ontology(o);
  p.base = (universal || p.inverse)
               ? DLProfile::Base::ALC
               : (p.horn ? DLProfile::Base::EL : DLProfile::Base::ELU);
  return p;
}

std::string DLProfile::text() const {
  std::string s;
  switch (base) {
    case Base::EL: s = "EL"; break;
    case Base::ELU: s = "ELU"; break;
    case Base::ALC: s = "ALC"; break;
  }
  if (hierarchy) s += "H";
  if (inverse) s += "I";
  if (functionality) s += "F";
  // EL is Horn by definition; elsewhere the Horn restriction is a prefix.
  if (horn && base != Base::EL) s = "Horn-" + s;
  return s;
}

bool profile_within(const DLProfile& inner, const DLProfile& outer) {
  if (static_cast<int>(inner.base) > static_cast<int>(outer.base))
    return false;
  if (inner.inverse && !outer.inverse) return false;
  if (inner.hierarchy && !outer.hierarchy) return false;
  if (inner.functionality && !outer.functionality) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Role hierarchy closure
// ---------------------------------------------------------------------------

SubroleClosure subrole_closure(const Ontology& o) {
  std::vector<Role> universe;
  for (const auto& name : o.role_names()) {
    universe.push_back(Role{name, false});
    universe.push_back(Role{name, true});
  }
  auto index_of = [&](const Role& r) {
    return std::lower_bound(universe.begin(), universe.end(), r) -
           universe.begin();
  };
  std::sort(universe.begin(), universe.end());
  const size_t n = universe.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& a : o.axioms) {
    const auto* sr = std::get_if<SubRole>(&a);
    if (!sr) continue;
    Role sub{sr->sub};
    reach[index_of(sub)][index_of(sr->sup)] = true;
    reach[index_of(sub.inverse())][index_of(sr->sup.inverse())] = true;
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (size_t j = 0; j < n; ++j)
        if (reach[k][j]) reach[i][j] = true;
    }
  std::set<std::pair<Role, Role>> pairs;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (reach[i][j] && i != j) pairs.insert({universe[i], universe[j]});
  return SubroleClosure{std::move(pairs)};
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum class Kind { Word, LParen, RParen, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) { tokenize(text); }
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.col);
  }

 private:
  void tokenize(const std::string& text) {
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](char c) {
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    };
    while (i < text.size()) {
      char c = text[i];
      if (c == '#') {  // comment to end of line
        while (i < text.size() && text[i] != '\n') advance(text[i++]);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(c);
        ++i;
        continue;
      }
      if (c == '(') {
        tokens_.push_back({Token::Kind::LParen, "(", line, col});
        advance(c);
        ++i;
        continue;
      }
      if (c == ')') {
        tokens_.push_back({Token::Kind::RParen, ")", line, col});
        advance(c);
        ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        int startCol = col;
        std::string word;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) ||
                text[i] == '_')) {
          word += text[i];
          advance(text[i++]);
        }
        tokens_.push_back({Token::Kind::Word, word, line, startCol});
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", line,
                       col);
    }
    tokens_.push_back({Token::Kind::End, "", line, col});
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

const std::set<std::string> kReserved = {
    "SubClassOf", "SubRoleOf", "And", "Or",  "Some",
    "All",        "AtMost1",   "Inv", "Top", "Bot"};

class OntologyParser {
 public:
  explicit OntologyParser(const std::string& text) : lex_(text) {}

  Ontology parse() {
    Ontology o;
    while (lex_.peek().kind != Token::Kind::End) {
      const Token& head = expect_word("statement");
      if (head.text == "SubClassOf") {
        o.axioms.push_back(parse_subclass());
      } else if (head.text == "SubRoleOf") {
        o.axioms.push_back(parse_subrole());
      } else {
        Lexer::fail("expected SubClassOf or SubRoleOf, got '" + head.text + "'",
                    head);
      }
    }
    return o;
  }

 private:
  const Token& expect_word(const std::string& what) {
    const Token& t = lex_.next();
    if (t.kind != Token::Kind::Word)
      Lexer::fail("expected " + what, t);
    return t;
  }
  void expect_lparen() {
    const Token& t = lex_.next();
    if (t.kind != Token::Kind::LParen) Lexer::fail("expected '('", t);
  }
  void expect_rparen() {
    const Token& t = lex_.next();
    if (t.kind != Token::Kind::RParen) Lexer::fail("expected ')'", t);
  }

  std::string parse_plain_name(const std::string& what) {
    const Token& t = expect_word(what);
    if (kReserved.count(t.text))
      Lexer::fail("reserved word '" + t.text + "' cannot be used as " + what,
                  t);
    return t.text;
  }

  Role parse_role() {
    const Token& t = expect_word("role");
    if (t.text == "Inv") {
      expect_lparen();
      std::string base = parse_plain_name("role name");
      expect_rparen();
      return Role{base, true};
    }
    if (kReserved.count(t.text))
      Lexer::fail("reserved word '" + t.text + "' cannot be used as a role",
                  t);
    return Role{t.text, false};
  }

  // A name, Top, or Bot in concept position.
  ConceptName parse_concept_name(bool allowTop, bool allowBot,
                                 const std::string& where) {
    const Token& t = expect_word("concept name");
    if (t.text == "Top") {
      if (!allowTop) Lexer::fail("Top not allowed " + where, t);
      return ConceptName::top();
    }
    if (t.text == "Bot") {
      if (!allowBot) Lexer::fail("Bot not allowed " + where, t);
      return ConceptName::bot();
    }
    if (kReserved.count(t.text))
      Lexer::fail("reserved word '" + t.text + "' cannot be used as a concept",
                  t);
    return ConceptName::named(t.text);
  }

  // Some-filler: name, Top, or And(name name). Bot is never a legal filler.
  std::vector<ConceptName> parse_some_filler() {
    if (lex_.peek().kind == Token::Kind::Word && lex_.peek().text == "And") {
      lex_.next();
      expect_lparen();
      std::vector<ConceptName> filler;
      while (lex_.peek().kind != Token::Kind::RParen)
        filler.push_back(parse_concept_name(false, false,
                                            "inside a conjunction filler"));
      expect_rparen();
      if (filler.size() != 2)
        Lexer::fail("conjunction filler must contain exactly two names",
                    lex_.peek());
      return filler;
    }
    return {parse_concept_name(true, false, "as an existential filler")};
  }

  ExistsConjunct parse_some_conjunct() {
    expect_lparen();
    ExistsConjunct e;
    e.role = parse_role();
    e.filler = parse_some_filler();
    expect_rparen();
    return e;
  }

  Lhs parse_lhs() {
    Lhs lhs;
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::Word)
      Lexer::fail("expected a concept on the left-hand side", t);
    if (t.text == "And") {
      lex_.next();
      expect_lparen();
      while (lex_.peek().kind != Token::Kind::RParen) {
        const Token& e = lex_.peek();
        if (e.kind == Token::Kind::Word && e.text == "Some") {
          lex_.next();
          lhs.exists.push_back(parse_some_conjunct());
        } else {
          lhs.names.push_back(
              parse_concept_name(true, true, "in a conjunction"));
        }
      }
      expect_rparen();
      if (lhs.empty())
        Lexer::fail("empty conjunction", t);
    } else if (t.text == "Some") {
      lex_.next();
      lhs.exists.push_back(parse_some_conjunct());
    } else if (t.text == "Or" || t.text == "All" || t.text == "AtMost1") {
      Lexer::fail("'" + t.text + "' not allowed on the left-hand side", t);
    } else {
      lhs.names.push_back(
          parse_concept_name(true, true, "on the left-hand side"));
    }
    return lhs;
  }

  Rhs parse_rhs() {
    Rhs rhs;
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::Word)
      Lexer::fail("expected a concept on the right-hand side", t);
    if (t.text == "Or") {
      lex_.next();
      expect_lparen();
      rhs.kind = Rhs::Kind::Union;
      while (lex_.peek().kind != Token::Kind::RParen)
        rhs.names.push_back(
            parse_concept_name(false, true, "inside a disjunction"));
      expect_rparen();
      if (rhs.names.empty()) Lexer::fail("empty disjunction", t);
      return rhs;
    }
    if (t.text == "Some" || t.text == "All" || t.text == "AtMost1") {
      lex_.next();
      expect_lparen();
      rhs.kind = t.text == "Some" ? Rhs::Kind::Some
                 : t.text == "All" ? Rhs::Kind::All
                                   : Rhs::Kind::AtMost1;
      rhs.role = parse_role();
      if (rhs.kind == Rhs::Kind::Some) {
        auto filler = parse_some_filler();
        if (filler.size() != 1)
          Lexer::fail("filler not a single concept name", t);
        rhs.filler = filler[0];
      } else if (rhs.kind == Rhs::Kind::All) {
        rhs.filler = parse_concept_name(true, true, "as a universal filler");
      } else {
        rhs.filler =
            parse_concept_name(true, false, "as a cardinality filler");
      }
      expect_rparen();
      return rhs;
    }
    if (t.text == "And")
      Lexer::fail("'And' not allowed on the right-hand side", t);
    rhs.kind = Rhs::Kind::Union;
    rhs.names.push_back(
        parse_concept_name(false, true, "on the right-hand side"));
    return rhs;
  }

  Axiom parse_subclass() {
    expect_lparen();
    GCI g;
    g.lhs = parse_lhs();
    g.rhs = parse_rhs();
    expect_rparen();
    canonicalize(g.lhs);
    canonicalize(g.rhs);
    return g;
  }

  Axiom parse_subrole() {
    expect_lparen();
    SubRole sr;
    sr.sub = parse_plain_name("a role name");
    sr.sup = parse_role();
    expect_rparen();
    return sr;
  }

  Lexer lex_;
};

}  // namespace

Ontology parse_ontology(const std::string& text) {
  return OntologyParser(text).parse();
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

std::string exists_text(const ExistsConjunct& e) {
  std::string filler = e.filler.size() == 1
                           ? e.filler[0].text()
                           : "And(" + e.filler[0].text() + " " +
                                 e.filler[1].text() + ")";
  return "Some(" + e.role.text() + " " + filler + ")";
}

}  // namespace

std::string serialize_axiom(const Axiom& axiom) {
  if (const auto* sr = std::get_if<SubRole>(&axiom))
    return "SubRoleOf(" + sr->sub + " " + sr->sup.text() + ")";
  const GCI& g = std::get<GCI>(axiom);
  std::string lhs;
  const size_t parts = g.lhs.names.size() + g.lhs.exists.size();
  if (parts == 1) {
    lhs = g.lhs.names.empty() ? exists_text(g.lhs.exists[0])
                              : g.lhs.names[0].text();
  } else {
    lhs = "And(";
    bool first = true;
    for (const auto& n : g.lhs.names) {
      if (!first) lhs += " ";
      lhs += n.text();
      first = false;
    }
    for (const auto& e : g.lhs.exists) {
      if (!first) lhs += " ";
      lhs += exists_text(e);
      first = false;
    }
    lhs += ")";
  }
  std::string rhs;
  switch (g.rhs.kind) {
    case Rhs::Kind::Union:
      if (g.rhs.names.size() == 1) {
        rhs = g.rhs.names[0].text();
      } else {
        rhs = "Or(";
        for (size_t i = 0; i < g.rhs.names.size(); ++i) {
          if (i) rhs += " ";
          rhs += g.rhs.names[i].text();
        }
        rhs += ")";
      }
      break;
    case Rhs::Kind::Some:
      rhs = "Some(" + g.rhs.role.text() + " " + g.rhs.filler.text() + ")";
      break;
    case Rhs::Kind::All:
      rhs = "All(" + g.rhs.role.text() + " " + g.rhs.filler.text() + ")";
      break;
    case Rhs::Kind::AtMost1:
      rhs = "AtMost1(" + g.rhs.role.text() + " " + g.rhs.filler.text() + ")";
      break;
  }
  return "SubClassOf(" + lhs + " " + rhs + ")";
}

std::string serialize_ontology(const Ontology& o) {
  std::string out;
  for (const auto& a : o.axioms) {
    out += serialize_axiom(a);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

namespace {

bool valid_constant(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0])))
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

Dataset parse_dataset(const std::string& text) {
  Dataset d;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    std::string s = line.substr(a, b - a + 1);

    size_t lp = s.find('(');
    size_t rp = s.rfind(')');
    if (lp == std::string::npos || rp == std::string::npos || rp < lp ||
        rp != s.size() - 1)
      throw ParseError("expected fact of the form A(a) or R(a,b)", lineNo, 1);
    Fact f;
    f.predicate = s.substr(0, lp);
    if (f.predicate.empty() || kReserved.count(f.predicate))
      throw ParseError("invalid predicate name '" + f.predicate + "'", lineNo,
                       1);
    std::string args = s.substr(lp + 1, rp - lp - 1);
    size_t comma = args.find(',');
    auto trim = [](std::string x) {
      size_t u = x.find_first_not_of(" \t");
      size_t v = x.find_last_not_of(" \t");
      return u == std::string::npos ? std::string() : x.substr(u, v - u + 1);
    };
    if (comma == std::string::npos) {
      f.binary = false;
      f.c1 = trim(args);
    } else {
      f.binary = true;
      f.c1 = trim(args.substr(0, comma));
      f.c2 = trim(args.substr(comma + 1));
    }
    if (!valid_constant(f.c1) || (f.binary && !valid_constant(f.c2)))
      throw ParseError("constants must be lowercase names: '" + s + "'",
                       lineNo, 1);
    d.facts.push_back(std::move(f));
  }
  return d;
}

std::string serialize_dataset(const Dataset& d) {
  std::string out;
  for (const auto& f : d.facts) {
    out += f.predicate + "(" + f.c1;
    if (f.binary) out += "," + f.c2;
    out += ")\n";
  }
  return out;
}

}  // namespace hornify
