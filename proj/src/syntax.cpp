// Copyright 2026 The soas Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "soas/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace soas {

namespace {

const std::set<std::string> kKeywords = {"forall", "first", "second",
                                         "refl",   "U",     "J"};

enum class Tok {
  Ident,
  Meta,
  Backslash,
  Dot,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LAngle,
  RAngle,
  Comma,
  Colon,
  Arrow,
  Star,
  Eq,
  Unify,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line;
    const std::size_t k = col;
    auto simple = [&](Tok t, std::size_t n) {
      out.push_back(Token{t, std::string(src.substr(i, n)), l, k});
      advance(n);
    };
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      simple(Tok::Ident, j - i);
      continue;
    }
    if (c == '?') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      if (j == i + 1) throw SyntaxError(l, k, "expected a metavariable name after '?'");
      out.push_back(Token{Tok::Meta, std::string(src.substr(i + 1, j - i - 1)), l, k});
      advance(j - i);
      continue;
    }
    if (src.substr(i, 3) == "=?=") {
      simple(Tok::Unify, 3);
      continue;
    }
    if (src.substr(i, 2) == "->") {
      simple(Tok::Arrow, 2);
      continue;
    }
    switch (c) {
      case '\\': simple(Tok::Backslash, 1); continue;
      case '.': simple(Tok::Dot, 1); continue;
      case '(': simple(Tok::LParen, 1); continue;
      case ')': simple(Tok::RParen, 1); continue;
      case '[': simple(Tok::LBracket, 1); continue;
      case ']': simple(Tok::RBracket, 1); continue;
      case '<': simple(Tok::LAngle, 1); continue;
      case '>': simple(Tok::RAngle, 1); continue;
      case ',': simple(Tok::Comma, 1); continue;
      case ':': simple(Tok::Colon, 1); continue;
      case '*': simple(Tok::Star, 1); continue;
      case '=': simple(Tok::Eq, 1); continue;
      default:
        throw SyntaxError(l, k, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Meta: return "metavariable";
    case Tok::Backslash: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Star: return "'*'";
    case Tok::Eq: return "'='";
    case Tok::Unify: return "'=?='";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  Parser(std::string_view src, const Language& lang)
      : tokens_(lex(src)), lang_(lang), sig_(lang.signature()) {}

  Term whole_term() {
    Term t = expr();
    expect(Tok::End);
    return t;
  }

  Constraint whole_constraint() {
    std::size_t binders = 0;
    while (at_keyword("forall")) {
      next();
      if (peek().kind != Tok::Ident) fail("expected a variable after forall");
      while (peek().kind == Tok::Ident) {
        scope_.push_back(binder_name());
        ++binders;
      }
      expect(Tok::Dot);
    }
    Term lhs = expr();
    expect(Tok::Unify);
    Term rhs = expr();
    expect(Tok::End);
    return Constraint{binders, std::move(lhs), std::move(rhs)};
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool at(Tok t) const { return peek().kind == t; }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(peek().line, peek().col, message);
  }

  const Token& expect(Tok t) {
    if (!at(t)) {
      fail(std::string("expected ") + describe(t) + ", found " +
           describe(peek().kind) +
           (peek().text.empty() ? "" : " '" + peek().text + "'"));
    }
    return next();
  }

  std::string binder_name() {
    const Token& t = expect(Tok::Ident);
    if (kKeywords.count(t.text)) {
      throw SyntaxError(t.line, t.col, "'" + t.text + "' is reserved");
    }
    return t.text;
  }

  void require(std::string_view tag, const Token& where,
               const std::string& construct) const {
    if (!sig_.has(tag)) {
      throw UnknownConstruct(where.line, where.col,
                             "unknown construct for language " + lang_.name +
                                 ": " + construct);
    }
  }

  Term make(std::string_view tag, std::vector<Term> children) const {
    return sig_.make(tag, std::move(children));
  }

  bool binder_ahead() const {
    return at(Tok::LParen) && peek(1).kind == Tok::Ident &&
           peek(2).kind == Tok::Colon;
  }

  Term expr() {
    if (at(Tok::Backslash)) return lambda();
    return arrow();
  }

  Term lambda() {
    const Token& start = expect(Tok::Backslash);
    require("Lam", start, "lambda");
    const bool annotated_lam = sig_.at("Lam")->arity() == 2;
    std::vector<Term> annotations;
    const std::size_t outer = scope_.size();
    do {
      if (at(Tok::LParen)) {
        const Token& open = next();
        if (!annotated_lam) {
          throw UnknownConstruct(open.line, open.col,
                                 "unknown construct for language " + lang_.name +
                                     ": annotated lambda");
        }
        std::string name = binder_name();
        expect(Tok::Colon);
        annotations.push_back(expr());
        expect(Tok::RParen);
        scope_.push_back(std::move(name));
      } else {
        std::string name = binder_name();
        annotations.emplace_back();
        scope_.push_back(std::move(name));
      }
    } while (!at(Tok::Dot));
    expect(Tok::Dot);
    Term body = expr();
    scope_.resize(outer);
    for (auto it = annotations.rbegin(); it != annotations.rend(); ++it) {
      body = annotated_lam ? make("Lam", {*it, body}) : make("Lam", {body});
    }
    return body;
  }

  // (x : A) -> B  or  (x : A) * B
  Term binder_form() {
    const Token& open = expect(Tok::LParen);
    std::string name = binder_name();
    expect(Tok::Colon);
    Term domain = expr();
    expect(Tok::RParen);
    const Token& op = peek();
    if (op.kind != Tok::Arrow && op.kind != Tok::Star) {
      fail("expected '->' or '*' after a binder");
    }
    const bool arrow = op.kind == Tok::Arrow;
    require(arrow ? "Pi" : "Sigma", open,
            arrow ? "dependent function type" : "dependent pair type");
    next();
    scope_.push_back(std::move(name));
    Term body = arrow ? this->arrow() : prod();
    scope_.pop_back();
    return make(arrow ? "Pi" : "Sigma", {domain, body});
  }

  Term arrow() {
    if (binder_ahead()) return after_arrow(binder_form());
    return after_arrow(prod());
  }

  Term after_arrow(Term left) {
    if (!at(Tok::Arrow)) return left;
    const Token& op = next();
    Term right = arrow();
    if (sig_.has("Fun")) return make("Fun", {left, right});
    require("Pi", op, "function type");
    return make("Pi", {left, weaken(right)});
  }

  Term prod() {
    Term left = binder_ahead() ? binder_form() : eq();
    if (!at(Tok::Star)) return left;
    const Token& op = next();
    Term right = prod();
    if (sig_.has("PairTy")) return make("PairTy", {left, right});
    require("Sigma", op, "pair type");
    return make("Sigma", {left, weaken(right)});
  }

  Term eq() {
    Term left = app();
    if (!at(Tok::Eq)) return left;
    const Token& op = next();
    require("Id", op, "identity type");
    Term right = app();
    return make("Id", {left, right});
  }

  bool starts_prefix() const {
    return at_keyword("first") || at_keyword("second") || at_keyword("refl");
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
        return peek().text != "forall";
      case Tok::Meta:
      case Tok::LParen:
      case Tok::LAngle:
      case Tok::Backslash:
        return true;
      default:
        return false;
    }
  }

  Term prefix() {
    const Token& kw = next();
    const std::string word = kw.text;
    const std::string tag =
        word == "first" ? "First" : word == "second" ? "Second" : "Refl";
    require(tag, kw, word);
    Term arg = atom();
    return make(tag, {arg});
  }

  Term app() {
    Term head = starts_prefix() ? prefix() : atom();
    while (starts_atom()) {
      const Token& where = peek();
      Term arg = at(Tok::Backslash) ? lambda() : starts_prefix() ? prefix() : atom();
      require("App", where, "application");
      head = make("App", {head, arg});
    }
    return head;
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        next();
        if (t.text == "U") {
          require("U", t, "universe");
          return make("U", {});
        }
        if (t.text == "J") {
          require("J", t, "J eliminator");
          expect(Tok::LParen);
          std::vector<Term> args;
          for (int k = 0; k < 6; ++k) {
            if (k > 0) expect(Tok::Comma);
            args.push_back(expr());
          }
          expect(Tok::RParen);
          return make("J", std::move(args));
        }
        if (kKeywords.count(t.text)) {
          throw SyntaxError(t.line, t.col, "unexpected keyword '" + t.text + "'");
        }
        for (std::size_t k = scope_.size(); k > 0; --k) {
          if (scope_[k - 1] == t.text) return Term::bound(scope_.size() - k);
        }
        return Term::free(t.text);
      }
      case Tok::Meta: {
        next();
        std::string id = t.text;
        expect(Tok::LBracket);
        std::vector<Term> args;
        if (!at(Tok::RBracket)) {
          args.push_back(expr());
          while (at(Tok::Comma)) {
            next();
            args.push_back(expr());
          }
        }
        expect(Tok::RBracket);
        return Term::meta(std::move(id), std::move(args));
      }
      case Tok::LParen: {
        next();
        Term inner = expr();
        expect(Tok::RParen);
        return inner;
      }
      case Tok::LAngle: {
        next();
        require("Pair", t, "pair");
        Term a = expr();
        expect(Tok::Comma);
        Term b = expr();
        expect(Tok::RAngle);
        return make("Pair", {a, b});
      }
      case Tok::Backslash:
        return lambda();
      default:
        fail(std::string("expected a term, found ") + describe(t.kind));
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Language& lang_;
  const Signature& sig_;
  std::vector<std::string> scope_;
};

// ---- printing -------------------------------------------------------------

enum Prec { kExpr = 0, kArrow = 1, kProd = 2, kEq = 3, kApp = 4, kAtom = 5 };

class Printer {
 public:
  Printer(std::set<std::string> avoid, std::vector<std::string> scope,
          std::vector<std::string> holes, bool typed)
      : avoid_(std::move(avoid)),
        scope_(std::move(scope)),
        holes_(std::move(holes)),
        typed_(typed) {
    avoid_.insert(kKeywords.begin(), kKeywords.end());
    avoid_.insert(scope_.begin(), scope_.end());
    avoid_.insert(holes_.begin(), holes_.end());
  }

  std::string fresh() const {
    static const char* const kBase[] = {"x", "y", "z", "w", "u", "v"};
    auto taken = [&](const std::string& n) {
      return avoid_.count(n) ||
             std::find(scope_.begin(), scope_.end(), n) != scope_.end();
    };
    for (const char* b : kBase) {
      if (!taken(b)) return b;
    }
    for (std::size_t i = 1;; ++i) {
      std::string n = "x" + std::to_string(i);
      if (!taken(n)) return n;
    }
  }

  void push(std::string name) { scope_.push_back(std::move(name)); }
  void pop() { scope_.pop_back(); }

  // Prints with an explicit type annotation on annotated operator nodes.
  bool shows_annotation(const Term& t) const {
    return typed_ && t.is_op() && t.annotation() &&
           !t.annotation()->is_universe();
  }

  void print(const Term& t, int prec, std::string& out) {
    if (shows_annotation(t)) {
      out += '(';
      print_node(t, kExpr, out);
      out += " : ";
      print_plain_type(t.annotation()->type(), out);
      out += ')';
      return;
    }
    print_node(t, prec, out);
  }

  void print_plain_type(const Term& ty, std::string& out) {
    const bool saved = typed_;
    typed_ = false;
    print(ty, kExpr, out);
    typed_ = saved;
  }

  void print_node(const Term& t, int prec, std::string& out) {
    switch (t.kind()) {
      case Term::Kind::Absent:
        out += "_";
        return;
      case Term::Kind::Var:
        print_var(t, out);
        return;
      case Term::Kind::Meta:
        out += "?" + t.meta_id() + "[";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i > 0) out += ", ";
          print(t.args()[i], kExpr, out);
        }
        out += "]";
        return;
      case Term::Kind::Op:
        print_op(t, prec, out);
        return;
    }
  }

 private:
  void print_var(const Term& t, std::string& out) const {
    const std::size_t k = t.index();
    if (t.is_free()) {
      out += t.name();
    } else if (t.is_bound()) {
      out += k < scope_.size() ? scope_[scope_.size() - 1 - k]
                               : "#" + std::to_string(k);
    } else {
      out += k < holes_.size() ? holes_[k] : "#" + std::to_string(k);
    }
  }

  template <class F>
  void wrap(bool parens, std::string& out, F&& body) {
    if (parens) out += '(';
    body();
    if (parens) out += ')';
  }

  void print_lambda(const Term& t, int prec, std::string& out) {
    wrap(prec > kExpr, out, [&] {
      out += "\\";
      std::size_t pushed = 0;
      Term cur = t;
      for (;;) {
        if (pushed > 0) out += ' ';
        const bool annotated = cur.children().size() == 2 && !cur.child(0).absent();
        std::string name = fresh();
        if (annotated) {
          out += "(" + name + " : ";
          print(cur.child(0), kExpr, out);
          out += ")";
        } else {
          out += name;
        }
        push(std::move(name));
        ++pushed;
        cur = cur.children().back();
        if (!cur.has_tag("Lam") || shows_annotation(cur)) break;
      }
      out += ". ";
      print(cur, kExpr, out);
      for (; pushed > 0; --pushed) pop();
    });
  }

  // A -> B, A * B and their dependent forms.
  void print_binary_type(const Term& t, int prec, std::string& out,
                         const char* op, int node_prec, int operand_prec,
                         bool scoped) {
    wrap(prec > node_prec, out, [&] {
      const Term& dom = t.child(0);
      const Term& body = t.child(1);
      if (scoped && occurs_bound(body, 0)) {
        std::string name = fresh();
        out += "(" + name + " : ";
        print(dom, kExpr, out);
        out += ") ";
        out += op;
        out += ' ';
        push(std::move(name));
        print(body, operand_prec, out);
        pop();
        return;
      }
      print(dom, operand_prec, out);
      out += ' ';
      out += op;
      out += ' ';
      print(scoped ? *strengthen(body) : body, operand_prec, out);
    });
  }

  void print_op(const Term& t, int prec, std::string& out) {
    const std::string& tag = t.tag();
    if (tag == "Lam") return print_lambda(t, prec, out);
    if (tag == "App") {
      wrap(prec > kApp, out, [&] {
        print(t.child(0), kApp, out);
        out += ' ';
        print(t.child(1), kAtom, out);
      });
      return;
    }
    if (tag == "Fun") return print_binary_type(t, prec, out, "->", kArrow, kProd, false);
    if (tag == "Pi") return print_binary_type(t, prec, out, "->", kArrow, kProd, true);
    if (tag == "PairTy") return print_binary_type(t, prec, out, "*", kProd, kEq, false);
    if (tag == "Sigma") return print_binary_type(t, prec, out, "*", kProd, kEq, true);
    if (tag == "Id") {
      wrap(prec > kEq, out, [&] {
        print(t.child(0), kApp, out);
        out += " = ";
        print(t.child(1), kApp, out);
      });
      return;
    }
    if (tag == "First" || tag == "Second" || tag == "Refl") {
      wrap(prec > kApp, out, [&] {
        out += tag == "First" ? "first " : tag == "Second" ? "second " : "refl ";
        print(t.child(0), kAtom, out);
      });
      return;
    }
    if (tag == "Pair") {
      out += "<";
      print(t.child(0), kExpr, out);
      out += ", ";
      print(t.child(1), kExpr, out);
      out += ">";
      return;
    }
    if (tag == "U" && t.children().empty()) {
      out += "U";
      return;
    }
    // Generic form for operators outside the bundled surface syntax.
    out += tag;
    if (t.children().empty() && tag != "J") return;
    out += "(";
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      if (i > 0) out += ", ";
      const Term& c = t.child(i);
      if (t.op().slots[i] == SlotKind::Scope) {
        std::string name = fresh();
        out += name + ". ";
        push(std::move(name));
        print(c, kExpr, out);
        pop();
      } else {
        print(c, kExpr, out);
      }
    }
    out += ")";
  }

  std::set<std::string> avoid_;
  std::vector<std::string> scope_;
  std::vector<std::string> holes_;
  bool typed_;
};

std::set<std::string> all_free_names(const Term& t) {
  return t.absent() ? std::set<std::string>{} : free_names(t);
}

}  // namespace

Term parse_term(std::string_view src, const Language& lang) {
  return Parser(src, lang).whole_term();
}

Constraint parse_constraint(std::string_view src, const Language& lang) {
  return Parser(src, lang).whole_constraint();
}

std::string print_term(const Term& t, const std::vector<std::string>& scope,
                       const std::vector<std::string>& holes) {
  Printer p(all_free_names(t), scope, holes, false);
  std::string out;
  p.print(t, kExpr, out);
  return out;
}

std::string print_annotation(const TypeAnnotation& ann) {
  if (ann.is_universe()) return "U∞";
  return print_term(ann.type());
}

std::string print_typed(const Term& t) {
  std::set<std::string> avoid = all_free_names(t);
  if (t.annotation() && !t.annotation()->is_universe()) {
    auto more = all_free_names(t.annotation()->type());
    avoid.insert(more.begin(), more.end());
  }
  Printer p(avoid, {}, {}, true);
  std::string out;
  p.print_node(t, kExpr, out);
  if (t.annotation() && !t.annotation()->is_universe()) {
    out += " : ";
    p.print_plain_type(t.annotation()->type(), out);
  }
  return out;
}

std::string print_constraint(const Constraint& c) {
  std::set<std::string> avoid = all_free_names(c.lhs);
  auto more = all_free_names(c.rhs);
  avoid.insert(more.begin(), more.end());
  Printer p(avoid, {}, {}, false);
  std::string out;
  if (c.binders > 0) {
    out += "forall";
    for (std::size_t i = 0; i < c.binders; ++i) {
      std::string name = p.fresh();
      out += " " + name;
      p.push(std::move(name));
    }
    out += ". ";
  }
  p.print(c.lhs, kExpr, out);
  out += " =?= ";
  p.print(c.rhs, kExpr, out);
  return out;
}

std::string print_meta_entry(const std::string& id, const MetaAbs& abs) {
  std::vector<std::string> holes;
  for (std::size_t i = 0; i < abs.arity; ++i) holes.push_back("x" + std::to_string(i + 1));
  std::string out = "?" + id + "[";
  for (std::size_t i = 0; i < holes.size(); ++i) {
    if (i > 0) out += ", ";
    out += holes[i];
  }
  out += "] := ";
  out += print_term(abs.body, {}, holes);
  return out;
}

std::string print_ast(const Term& t) {
  std::string out;
  switch (t.kind()) {
    case Term::Kind::Absent:
      return "_";
    case Term::Kind::Var:
      if (t.is_free()) {
        out = "(free " + t.name() + ")";
      } else {
        out = std::string(t.is_bound() ? "(bound " : "(hole ") +
              std::to_string(t.index()) + ")";
      }
      break;
    case Term::Kind::Meta:
      out = "(?" + t.meta_id();
      for (const auto& a : t.args()) out += " " + print_ast(a);
      out += ")";
      break;
    case Term::Kind::Op:
      out = "(" + t.tag();
      for (const auto& c : t.children()) out += " " + print_ast(c);
      out += ")";
      break;
  }
  if (t.annotation()) {
    const auto& ann = *t.annotation();
    out = "(: " + out + " " + (ann.is_universe() ? "Uinf" : print_ast(ann.type())) + ")";
  }
  return out;
}

void collect_metas(const Term& t, std::vector<std::string>& order) {
  if (t.absent()) return;
  if (t.is_meta()) {
    if (std::find(order.begin(), order.end(), t.meta_id()) == order.end()) {
      order.push_back(t.meta_id());
    }
    for (const auto& a : t.args()) collect_metas(a, order);
  } else if (t.is_op()) {
    for (const auto& c : t.children()) collect_metas(c, order);
  }
  if (t.annotation() && !t.annotation()->is_universe()) {
    collect_metas(t.annotation()->type(), order);
  }
}

Term rename_metas(const Term& t, const std::map<std::string, std::string>& names) {
  if (t.absent() || t.is_var()) return t;
  std::optional<TypeAnnotation> ann = t.annotation();
  if (ann && !ann->is_universe()) {
    ann = TypeAnnotation::of(rename_metas(ann->type(), names));
  }
  std::vector<Term> kids;
  for (const auto& c : t.is_meta() ? t.args() : t.children()) {
    kids.push_back(rename_metas(c, names));
  }
  if (t.is_meta()) {
    auto it = names.find(t.meta_id());
    return Term::meta(it == names.end() ? t.meta_id() : it->second,
                      std::move(kids), std::move(ann));
  }
  return Term::op(t.op_ref(), std::move(kids), std::move(ann));
}

std::map<std::string, std::string> canonical_names(
    const std::vector<std::string>& order, const std::string& prefix) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.emplace(order[i], prefix + std::to_string(i + 1));
  }
  return out;
}

}  // namespace soas
