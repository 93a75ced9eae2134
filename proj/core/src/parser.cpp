#include "fopreserve/parser.hpp"

#include <cctype>
#include <set>

#include "fopreserve/errors.hpp"

namespace fopreserve {

namespace {

bool is_keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "Forall" || s == "Exists";
}

struct Tok {
  enum T {
    Ident, Int, LPar, RPar, LBrace, RBrace, Comma, Dot, Semi, Slash,
    EqSign, Tilde, Amp, Pipe, Arrow, DArrow, End
  } t;
  std::string s;
  std::size_t off = 0;
  long value = 0;
};

const char* tok_name(Tok::T t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LPar: return "'('";
    case Tok::RPar: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Semi: return "';'";
    case Tok::Slash: return "'/'";
    case Tok::EqSign: return "'='";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  Tok cur;

  explicit Parser(const std::string& t) : text(t) { advance(); }

  [[noreturn]] void fail(const std::string& msg, std::size_t off) const {
    throw parse_error(msg, off);
  }

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    cur = Tok{Tok::End, "", pos, 0};
    if (pos >= text.size()) return;
    const char c = text[pos];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      cur = Tok{Tok::Ident, text.substr(start, pos - start), start, 0};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      long v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > 1000000) fail("integer too large", start);
        ++pos;
      }
      cur = Tok{Tok::Int, text.substr(start, pos - start), start, v};
      return;
    }
    auto single = [&](Tok::T t) {
      cur = Tok{t, std::string(1, c), pos, 0};
      ++pos;
    };
    switch (c) {
      case '(': single(Tok::LPar); return;
      case ')': single(Tok::RPar); return;
      case '{': single(Tok::LBrace); return;
      case '}': single(Tok::RBrace); return;
      case ',': single(Tok::Comma); return;
      case '.': single(Tok::Dot); return;
      case ';': single(Tok::Semi); return;
      case '/': single(Tok::Slash); return;
      case '=': single(Tok::EqSign); return;
      case '~': single(Tok::Tilde); return;
      case '&': single(Tok::Amp); return;
      case '|': single(Tok::Pipe); return;
      case '-':
        if (pos + 1 < text.size() && text[pos + 1] == '>') {
          cur = Tok{Tok::Arrow, "->", pos, 0};
          pos += 2;
          return;
        }
        fail("expected '->'", pos);
      case '<':
        if (text.compare(pos, 3, "<->") == 0) {
          cur = Tok{Tok::DArrow, "<->", pos, 0};
          pos += 3;
          return;
        }
        fail("expected '<->'", pos);
      default:
        fail(std::string("unexpected character '") + c + "'", pos);
    }
  }

  bool at(Tok::T t) const { return cur.t == t; }

  Tok expect(Tok::T t, const char* what) {
    if (cur.t != t) fail(std::string("expected ") + what + ", found " + tok_name(cur.t), cur.off);
    Tok out = cur;
    advance();
    return out;
  }

  bool accept(Tok::T t) {
    if (cur.t != t) return false;
    advance();
    return true;
  }
};

// ---------- formula grammar ----------

struct FormulaParser {
  Parser& p;
  const Vocabulary& vocab;

  FormulaPtr formula() {
    if (p.at(Tok::Ident) && (p.cur.s == "forall" || p.cur.s == "exists")) {
      const bool ex = p.cur.s == "exists";
      p.advance();
      std::vector<std::string> vars;
      for (;;) {
        Tok v = p.expect(Tok::Ident, "variable");
        check_fo_var(v);
        vars.push_back(v.s);
        if (!p.accept(Tok::Comma)) break;
      }
      p.expect(Tok::Dot, "'.'");
      FormulaPtr body = formula();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = ex ? mk_exists(*it, body) : mk_forall(*it, body);
      return body;
    }
    if (p.at(Tok::Ident) && (p.cur.s == "Forall" || p.cur.s == "Exists")) {
      const bool ex = p.cur.s == "Exists";
      p.advance();
      Tok v = p.expect(Tok::Ident, "set variable");
      check_set_var(v);
      p.expect(Tok::Dot, "'.'");
      FormulaPtr body = formula();
      return ex ? mk_exists_set(v.s, body) : mk_forall_set(v.s, body);
    }
    return iff();
  }

  FormulaPtr iff() {
    FormulaPtr l = imp();
    while (p.accept(Tok::DArrow)) l = mk_iff(l, imp());
    return l;
  }

  FormulaPtr imp() {
    FormulaPtr l = disj();
    if (p.accept(Tok::Arrow)) return mk_implies(l, imp());
    return l;
  }

  FormulaPtr disj() {
    FormulaPtr l = conj();
    while (p.accept(Tok::Pipe)) l = mk_or(l, conj());
    return l;
  }

  FormulaPtr conj() {
    FormulaPtr l = unary();
    while (p.accept(Tok::Amp)) l = mk_and(l, unary());
    return l;
  }

  FormulaPtr unary() {
    if (p.accept(Tok::Tilde)) return mk_not(unary());
    if (p.accept(Tok::LPar)) {
      FormulaPtr f = formula();
      p.expect(Tok::RPar, "')'");
      return f;
    }
    return atom();
  }

  FormulaPtr atom() {
    Tok name = p.expect(Tok::Ident, "atom");
    if (is_keyword(name.s))
      p.fail("quantifier must be parenthesized here", name.off);
    if (p.at(Tok::LPar)) {
      p.advance();
      const int pi = vocab.pred_index(name.s);
      if (pi >= 0) {
        std::vector<Term> args;
        for (;;) {
          args.push_back(term());
          if (!p.accept(Tok::Comma)) break;
        }
        p.expect(Tok::RPar, "')'");
        const int arity = vocab.predicates[pi].second;
        if (static_cast<int>(args.size()) != arity)
          p.fail("arity mismatch for " + name.s + ": expected " + std::to_string(arity) +
                     ", got " + std::to_string(args.size()),
                 name.off);
        return mk_pred(name.s, std::move(args));
      }
      if (std::isupper(static_cast<unsigned char>(name.s[0]))) {
        Term t = term();
        p.expect(Tok::RPar, "')'");
        return mk_setmem(name.s, t);
      }
      p.fail("unknown predicate: " + name.s, name.off);
    }
    Term lhs = resolve_term(name);
    p.expect(Tok::EqSign, "'=' or '('");
    Tok rhs = p.expect(Tok::Ident, "term");
    return mk_eq(lhs, resolve_term(rhs));
  }

  Term term() {
    Tok t = p.expect(Tok::Ident, "term");
    return resolve_term(t);
  }

  Term resolve_term(const Tok& t) {
    if (is_keyword(t.s)) p.fail("reserved word used as term", t.off);
    if (vocab.const_index(t.s) >= 0) return cst(t.s);
    if (std::islower(static_cast<unsigned char>(t.s[0]))) return var(t.s);
    p.fail("unknown symbol: " + t.s, t.off);
  }

  void check_fo_var(const Tok& v) {
    if (is_keyword(v.s)) p.fail("reserved word used as variable", v.off);
    if (!std::islower(static_cast<unsigned char>(v.s[0])))
      p.fail("first-order variables start lowercase: " + v.s, v.off);
    if (vocab.has_symbol(v.s))
      p.fail("bound variable shadows vocabulary symbol: " + v.s, v.off);
  }

  void check_set_var(const Tok& v) {
    if (is_keyword(v.s)) p.fail("reserved word used as set variable", v.off);
    if (!std::isupper(static_cast<unsigned char>(v.s[0])))
      p.fail("set variables start uppercase: " + v.s, v.off);
    if (vocab.has_symbol(v.s))
      p.fail("set variable shadows vocabulary symbol: " + v.s, v.off);
  }
};

// ---------- vocab and structure blocks ----------

Vocabulary vocab_block(Parser& p) {
  Tok kw = p.expect(Tok::Ident, "'vocab'");
  if (kw.s != "vocab") p.fail("expected 'vocab'", kw.off);
  p.expect(Tok::LBrace, "'{'");
  Vocabulary v;
  while (!p.at(Tok::RBrace)) {
    Tok name = p.expect(Tok::Ident, "symbol name");
    if (p.accept(Tok::Slash)) {
      Tok arity = p.expect(Tok::Int, "arity");
      if (arity.value < 1) p.fail("arity must be >= 1", arity.off);
      v.predicates.emplace_back(name.s, static_cast<int>(arity.value));
    } else {
      v.constants.push_back(name.s);
    }
    if (!p.accept(Tok::Semi) && !p.at(Tok::RBrace))
      p.fail("expected ';' or '}'", p.cur.off);
  }
  p.expect(Tok::RBrace, "'}'");
  try {
    v.validate();
  } catch (const semantic_error& e) {
    p.fail(e.what(), kw.off);
  }
  return v;
}

Structure structure_block(Parser& p, const Vocabulary& vocab) {
  Tok kw = p.expect(Tok::Ident, "'structure'");
  if (kw.s != "structure") p.fail("expected 'structure'", kw.off);
  Tok over = p.expect(Tok::Ident, "'over'");
  if (over.s != "over") p.fail("expected 'over'", over.off);
  Tok size = p.expect(Tok::Int, "universe size");
  if (size.value < 1) p.fail("universe must be nonempty", size.off);
  Structure M = make_empty_structure(vocab, static_cast<int>(size.value));
  p.expect(Tok::LBrace, "'{'");

  std::set<std::string> seen;
  std::set<std::string> constantsSeen;
  while (!p.at(Tok::RBrace)) {
    Tok name = p.expect(Tok::Ident, "block name");
    if (!seen.insert(name.s).second) p.fail("duplicate block: " + name.s, name.off);
    p.expect(Tok::EqSign, "'='");
    const int pi = vocab.pred_index(name.s);
    const int ci = vocab.const_index(name.s);
    if (pi >= 0) {
      const int arity = vocab.predicates[pi].second;
      p.expect(Tok::LBrace, "'{'");
      while (!p.at(Tok::RBrace)) {
        std::vector<int> tuple;
        if (p.at(Tok::Int)) {
          if (arity != 1)
            p.fail("expected tuple of arity " + std::to_string(arity), p.cur.off);
          Tok e = p.expect(Tok::Int, "element");
          if (e.value >= size.value) p.fail("element out of range", e.off);
          tuple.push_back(static_cast<int>(e.value));
        } else {
          p.expect(Tok::LPar, "'(' or element");
          for (;;) {
            Tok e = p.expect(Tok::Int, "element");
            if (e.value >= size.value) p.fail("element out of range", e.off);
            tuple.push_back(static_cast<int>(e.value));
            if (!p.accept(Tok::Comma)) break;
          }
          p.expect(Tok::RPar, "')'");
          if (static_cast<int>(tuple.size()) != arity)
            p.fail("expected tuple of arity " + std::to_string(arity), name.off);
        }
        M.set(pi, tuple);
        p.accept(Tok::Comma);
      }
      p.expect(Tok::RBrace, "'}'");
    } else if (ci >= 0) {
      Tok e = p.expect(Tok::Int, "element");
      if (e.value >= size.value) p.fail("element out of range", e.off);
      M.constantMap[ci] = static_cast<int>(e.value);
      constantsSeen.insert(name.s);
    } else {
      p.fail("unknown symbol: " + name.s, name.off);
    }
    if (!p.accept(Tok::Semi) && !p.at(Tok::RBrace))
      p.fail("expected ';' or '}'", p.cur.off);
  }
  p.expect(Tok::RBrace, "'}'");

  for (const auto& c : vocab.constants)
    if (!constantsSeen.count(c)) p.fail("missing constant: " + c, kw.off);
  return M;
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Vocabulary& vocab) {
  Parser p(text);
  FormulaParser fp{p, vocab};
  FormulaPtr f = fp.formula();
  if (!p.at(Tok::End)) p.fail("unexpected trailing input", p.cur.off);
  return f;
}

Vocabulary parse_vocab(const std::string& text) {
  Parser p(text);
  Vocabulary v = vocab_block(p);
  if (!p.at(Tok::End)) p.fail("unexpected trailing input", p.cur.off);
  return v;
}

Structure parse_structure(const std::string& text) {
  Parser p(text);
  Vocabulary v = vocab_block(p);
  Structure M = structure_block(p, v);
  if (!p.at(Tok::End)) p.fail("unexpected trailing input", p.cur.off);
  return M;
}

FormulaFile parse_formula_file(const std::string& text) {
  Parser p(text);
  FormulaFile out;
  out.vocab = vocab_block(p);
  FormulaParser fp{p, out.vocab};
  out.formula = fp.formula();
  if (!p.at(Tok::End)) p.fail("unexpected trailing input", p.cur.off);
  return out;
}

}  // namespace fopreserve
