// Copyright 2026 The helam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "helam/syntax.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "helam/mask.h"

namespace helam {

std::string SyntaxError::ToString() const {
  return fmt::format("{} error at {}: {}",
                     kind == Kind::kParse ? "parse" : "desugar",
                     span.ToString(), message);
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  kIdent,
  kInt,
  kLParen,
  kRParen,
  kLBrack,
  kRBrack,
  kComma,
  kSemi,
  kColon,
  kDot,
  kAt,
  kEq,
  kFatArrow,
  kArrow,
  kPlus,
  kStar,
  kEof,
};

std::string_view TokName(Tok t) {
  switch (t) {
    case Tok::kIdent:
      return "identifier";
    case Tok::kInt:
      return "integer";
    case Tok::kLParen:
      return "'('";
    case Tok::kRParen:
      return "')'";
    case Tok::kLBrack:
      return "'['";
    case Tok::kRBrack:
      return "']'";
    case Tok::kComma:
      return "','";
    case Tok::kSemi:
      return "';'";
    case Tok::kColon:
      return "':'";
    case Tok::kDot:
      return "'.'";
    case Tok::kAt:
      return "'@'";
    case Tok::kEq:
      return "'='";
    case Tok::kFatArrow:
      return "'=>'";
    case Tok::kArrow:
      return "'->'";
    case Tok::kPlus:
      return "'+'";
    case Tok::kStar:
      return "'*'";
    case Tok::kEof:
      return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::kEof;
  std::string text;
  SourceSpan span;
};

struct ParseFail {
  SyntaxError err;
};

[[noreturn]] void Fail(const SourceSpan& span, std::string message) {
  throw ParseFail{SyntaxError{SyntaxError::Kind::kParse, span, std::move(message)}};
}

const std::set<std::string, std::less<>>& Keywords() {
  static const std::set<std::string, std::less<>> kKeywords = {
      "let", "case", "of",     "fn",  "Inl",  "Inr",
      "Pair", "fst", "snd", "lookup", "com", "type",
  };
  return kKeywords;
}

std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1;
  size_t line_start = 0;
  auto span_at = [&](size_t start, size_t end) {
    return SourceSpan{start, end, line, static_cast<int>(start - line_start) + 1};
  };
  auto is_head = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  };
  auto is_tail = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      line_start = i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    size_t start = i;
    if (is_head(c)) {
      while (i < text.size() && is_tail(text[i])) ++i;
      // Generated names carry `$digits` suffixes.
      while (i + 1 < text.size() && text[i] == '$' &&
             std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      }
      out.push_back({Tok::kIdent, std::string(text.substr(start, i - start)),
                     span_at(start, i)});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::kInt, std::string(text.substr(start, i - start)),
                     span_at(start, i)});
      continue;
    }
    Tok kind;
    size_t len = 1;
    switch (c) {
      case '(':
        kind = Tok::kLParen;
        break;
      case ')':
        kind = Tok::kRParen;
        break;
      case '[':
        kind = Tok::kLBrack;
        break;
      case ']':
        kind = Tok::kRBrack;
        break;
      case ',':
        kind = Tok::kComma;
        break;
      case ';':
        kind = Tok::kSemi;
        break;
      case ':':
        kind = Tok::kColon;
        break;
      case '.':
        kind = Tok::kDot;
        break;
      case '@':
        kind = Tok::kAt;
        break;
      case '+':
        kind = Tok::kPlus;
        break;
      case '*':
        kind = Tok::kStar;
        break;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          kind = Tok::kFatArrow;
          len = 2;
        } else {
          kind = Tok::kEq;
        }
        break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          kind = Tok::kArrow;
          len = 2;
          break;
        }
        [[fallthrough]];
      default:
        Fail(span_at(start, start + 1),
             fmt::format("unexpected character '{}'", c));
    }
    i += len;
    out.push_back({kind, std::string(text.substr(start, len)), span_at(start, i)});
  }
  SourceSpan eof = span_at(text.size(), text.size());
  out.push_back({Tok::kEof, "", eof});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

std::shared_ptr<SExpr> Node(SExpr::Kind kind, SourceSpan span) {
  auto n = std::make_shared<SExpr>();
  n->kind = kind;
  n->span = span;
  return n;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SurfaceProgram Program() {
    SurfaceProgram out;
    while (IsKeyword("type") ||
           (Peek().kind == Tok::kIdent && !Keywords().count(Peek().text) &&
            PeekAt(1).kind == Tok::kEq)) {
      if (IsKeyword("type")) Next();
      Token name = Expect(Tok::kIdent);
      if (aliases_.count(name.text)) {
        Fail(name.span, fmt::format("type alias {} is already defined", name.text));
      }
      Expect(Tok::kEq);
      DataTypeP d = Data();
      Expect(Tok::kSemi);
      aliases_.emplace(name.text, d);
    }
    out.body = Expr();
    if (Peek().kind != Tok::kEof) Unexpected("end of input");
    out.aliases = aliases_;
    return out;
  }

  ChorTypeP TypeOnly() {
    ChorTypeP t = Type();
    if (Peek().kind != Tok::kEof) Unexpected("end of input");
    return t;
  }

 private:
  const Token& Peek() const { return toks_[pos_]; }
  const Token& PeekAt(size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool IsKeyword(std::string_view kw) const {
    return Peek().kind == Tok::kIdent && Peek().text == kw;
  }
  SourceSpan Last() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }

  [[noreturn]] void Unexpected(std::string_view expected) {
    const Token& t = Peek();
    std::string found = t.kind == Tok::kEof ? std::string("end of input")
                                            : fmt::format("'{}'", t.text);
    Fail(t.span, fmt::format("expected {}, found {}", expected, found));
  }

  Token Expect(Tok kind) {
    if (Peek().kind != kind) Unexpected(TokName(kind));
    return Next();
  }

  void ExpectKeyword(std::string_view kw) {
    if (!IsKeyword(kw)) Unexpected(fmt::format("'{}'", kw));
    Next();
  }

  std::string Binder() {
    if (Peek().kind != Tok::kIdent || Keywords().count(Peek().text)) {
      Unexpected("a variable name");
    }
    return Next().text;
  }

  PartyName Party() {
    const Token& t = Peek();
    if (t.kind != Tok::kIdent || !IsValidPartyName(t.text)) {
      Unexpected("a party name");
    }
    return Next().text;
  }

  PartySet Parties() {
    Expect(Tok::kLBrack);
    if (Peek().kind == Tok::kRBrack) {
      Fail(Peek().span, "party list may not be empty");
    }
    std::vector<PartyName> names{Party()};
    while (Peek().kind == Tok::kComma) {
      Next();
      names.push_back(Party());
    }
    Expect(Tok::kRBrack);
    return PartySet::Of(std::move(names));
  }

  static SourceSpan Join(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.end = b.end;
    return s;
  }

  // --- types ---

  DataTypeP Data() {
    DataTypeP d = Prod();
    while (Peek().kind == Tok::kPlus) {
      Next();
      d = DataType::Sum(d, Prod());
    }
    return d;
  }

  DataTypeP Prod() {
    DataTypeP d = DAtom();
    while (Peek().kind == Tok::kStar) {
      Next();
      d = DataType::Prod(d, DAtom());
    }
    return d;
  }

  DataTypeP DAtom() {
    if (Peek().kind == Tok::kLParen) {
      Next();
      if (Peek().kind == Tok::kRParen) {
        Next();
        return DataType::Unit();
      }
      DataTypeP d = Data();
      Expect(Tok::kRParen);
      return d;
    }
    if (Peek().kind == Tok::kIdent && !Keywords().count(Peek().text)) {
      const Token& t = Next();
      auto it = aliases_.find(t.text);
      if (it == aliases_.end()) {
        Fail(t.span, fmt::format("unknown type name {}", t.text));
      }
      return it->second;
    }
    Unexpected("a data type");
  }

  ChorTypeP Type() {
    if (Peek().kind != Tok::kLParen) {
      DataTypeP d = Data();
      Expect(Tok::kAt);
      return ChorType::Data(d, Parties());
    }
    size_t start = pos_;
    std::optional<SyntaxError> best;
    auto attempt = [&](auto&& body) -> ChorTypeP {
      pos_ = start;
      try {
        return body();
      } catch (ParseFail& f) {
        if (!best || f.err.span.start > best->span.start) best = f.err;
        return nullptr;
      }
    };
    ChorTypeP t = attempt([&]() -> ChorTypeP {
      Expect(Tok::kLParen);
      ChorTypeP a = Type();
      Expect(Tok::kArrow);
      ChorTypeP r = Type();
      Expect(Tok::kRParen);
      Expect(Tok::kAt);
      return ChorType::Fun(a, r, Parties());
    });
    if (t) return t;
    t = attempt([&]() -> ChorTypeP {
      DataTypeP d = Data();
      Expect(Tok::kAt);
      return ChorType::Data(d, Parties());
    });
    if (t) return t;
    t = attempt([&]() -> ChorTypeP {
      Expect(Tok::kLParen);
      std::vector<ChorTypeP> elems{Type()};
      bool comma = false;
      while (Peek().kind == Tok::kComma) {
        Next();
        comma = true;
        if (Peek().kind == Tok::kRParen) break;
        elems.push_back(Type());
      }
      Expect(Tok::kRParen);
      if (!comma) return elems.front();
      return ChorType::Tuple(std::move(elems));
    });
    if (t) return t;
    throw ParseFail{*best};
  }

  // --- expressions ---

  SExprP Expr() {
    if (IsKeyword("let")) {
      SourceSpan start = Next().span;
      auto n = Node(SExpr::Kind::kLet, start);
      n->name = Binder();
      if (Peek().kind == Tok::kColon) {
        Next();
        n->type = Type();
      }
      Expect(Tok::kEq);
      n->kids.push_back(Expr());
      Expect(Tok::kSemi);
      n->kids.push_back(Expr());
      n->span = Join(start, Last());
      return n;
    }
    if (IsKeyword("case")) {
      SourceSpan start = Next().span;
      auto n = Node(SExpr::Kind::kCase, start);
      n->parties = Parties();
      n->kids.push_back(Expr());
      ExpectKeyword("of");
      ExpectKeyword("Inl");
      n->left_var = Binder();
      Expect(Tok::kFatArrow);
      n->kids.push_back(Expr());
      Expect(Tok::kSemi);
      ExpectKeyword("Inr");
      n->right_var = Binder();
      Expect(Tok::kFatArrow);
      n->kids.push_back(Expr());
      n->span = Join(start, Last());
      return n;
    }
    return App();
  }

  bool StartsAtom() const {
    const Token& t = Peek();
    if (t.kind == Tok::kLParen) return true;
    if (t.kind != Tok::kIdent) return false;
    if (!Keywords().count(t.text)) return true;
    return t.text == "fst" || t.text == "snd" || t.text == "lookup" ||
           t.text == "com";
  }

  SExprP App() {
    SExprP e = Head();
    while (StartsAtom()) {
      SExprP a = Atom();
      auto n = Node(SExpr::Kind::kApp, Join(e->span, a->span));
      n->kids = {e, a};
      e = n;
    }
    return e;
  }

  SExprP Head() {
    auto ctor = [&](SExpr::Kind kind, int arity) {
      SourceSpan start = Next().span;
      auto n = Node(kind, start);
      for (int i = 0; i < arity; ++i) n->kids.push_back(Atom());
      n->span = Join(start, Last());
      return n;
    };
    if (IsKeyword("Inl")) return ctor(SExpr::Kind::kInl, 1);
    if (IsKeyword("Inr")) return ctor(SExpr::Kind::kInr, 1);
    if (IsKeyword("Pair")) return ctor(SExpr::Kind::kPair, 2);
    return Atom();
  }

  SExprP Atom() {
    const Token& t = Peek();
    SourceSpan start = t.span;
    if (t.kind == Tok::kIdent) {
      if (t.text == "fst" || t.text == "snd") {
        auto n = Node(t.text == "fst" ? SExpr::Kind::kFst : SExpr::Kind::kSnd,
                      start);
        Next();
        n->parties = Parties();
        n->span = Join(start, Last());
        return n;
      }
      if (t.text == "lookup") {
        Next();
        auto n = Node(SExpr::Kind::kLookup, start);
        Expect(Tok::kLBrack);
        Token i = Expect(Tok::kInt);
        n->index = std::stoi(i.text);
        if (n->index < 1) Fail(i.span, "lookup index must be at least 1");
        Expect(Tok::kRBrack);
        n->parties = Parties();
        n->span = Join(start, Last());
        return n;
      }
      if (t.text == "com") {
        Next();
        auto n = Node(SExpr::Kind::kCom, start);
        Expect(Tok::kLBrack);
        n->name = Party();
        Expect(Tok::kRBrack);
        n->parties = Parties();
        n->span = Join(start, Last());
        return n;
      }
      if (Keywords().count(t.text)) Unexpected("an expression");
      auto n = Node(SExpr::Kind::kVar, start);
      n->name = Next().text;
      return n;
    }
    if (t.kind != Tok::kLParen) Unexpected("an expression");
    Next();
    if (Peek().kind == Tok::kRParen) {
      Next();
      Expect(Tok::kAt);
      auto n = Node(SExpr::Kind::kUnit, start);
      n->parties = Parties();
      n->span = Join(start, Last());
      return n;
    }
    if (IsKeyword("fn")) {
      Next();
      auto n = Node(SExpr::Kind::kLambda, start);
      n->name = Binder();
      Expect(Tok::kColon);
      n->type = Type();
      Expect(Tok::kDot);
      n->kids.push_back(Expr());
      Expect(Tok::kRParen);
      Expect(Tok::kAt);
      n->parties = Parties();
      n->span = Join(start, Last());
      return n;
    }
    SExprP first = Expr();
    if (Peek().kind != Tok::kComma) {
      Expect(Tok::kRParen);
      return first;
    }
    auto n = Node(SExpr::Kind::kVec, start);
    n->kids.push_back(first);
    while (Peek().kind == Tok::kComma) {
      Next();
      if (Peek().kind == Tok::kRParen) break;
      n->kids.push_back(Expr());
    }
    Expect(Tok::kRParen);
    n->span = Join(start, Last());
    return n;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::map<std::string, DataTypeP> aliases_;
};

// ---------------------------------------------------------------------------
// Desugaring

struct DesugarFail {
  std::optional<SyntaxError> syntax;
  std::optional<TypeError> type;
};

void SurfaceRoles(const SExpr& s, std::set<PartyName>& out) {
  out.insert(s.parties.begin(), s.parties.end());
  if (s.kind == SExpr::Kind::kCom) out.insert(s.name);
  if (s.type) CollectTypeParties(*s.type, out);
  for (const SExprP& k : s.kids) SurfaceRoles(*k, out);
}

void SurfaceNames(const SExpr& s, std::set<std::string>& out) {
  if (s.kind == SExpr::Kind::kVar || s.kind == SExpr::Kind::kLambda ||
      s.kind == SExpr::Kind::kLet) {
    out.insert(s.name);
  }
  if (s.kind == SExpr::Kind::kCase) {
    out.insert(s.left_var);
    out.insert(s.right_var);
  }
  for (const SExprP& k : s.kids) SurfaceNames(*k, out);
}

class Desugarer {
 public:
  explicit Desugarer(std::set<std::string> taken) : taken_(std::move(taken)) {}

  ExprP Run(const SExpr& s, const PartySet& theta) {
    switch (s.kind) {
      case SExpr::Kind::kVar:
        return Expr::Val(Value::Var(s.name, s.span));
      case SExpr::Kind::kUnit:
        return Expr::Val(Value::Unit(s.parties, s.span));
      case SExpr::Kind::kFst:
        return Expr::Val(Value::Fst(s.parties, s.span));
      case SExpr::Kind::kSnd:
        return Expr::Val(Value::Snd(s.parties, s.span));
      case SExpr::Kind::kLookup:
        return Expr::Val(Value::Lookup(s.index, s.parties, s.span));
      case SExpr::Kind::kCom:
        return Expr::Val(Value::Com(s.name, s.parties, s.span));
      case SExpr::Kind::kLambda: {
        gamma_.emplace_back(s.name, s.type);
        ExprP body = Run(*s.kids[0], s.parties);
        gamma_.pop_back();
        return Expr::Val(Value::Lambda(s.name, s.type, std::move(body),
                                       s.parties, s.span));
      }
      case SExpr::Kind::kApp:
        return Expr::App(Run(*s.kids[0], theta), Run(*s.kids[1], theta), s.span);
      case SExpr::Kind::kLet: {
        ExprP bound = Run(*s.kids[0], theta);
        ChorTypeP t = s.type ? s.type : Infer(bound, theta, s.name, s.span);
        gamma_.emplace_back(s.name, t);
        ExprP body = Run(*s.kids[1], theta);
        gamma_.pop_back();
        return Expr::App(
            Expr::Val(Value::Lambda(s.name, t, std::move(body), theta, s.span)),
            std::move(bound), s.span);
      }
      case SExpr::Kind::kCase:
        return Case(s, theta);
      case SExpr::Kind::kInl:
      case SExpr::Kind::kInr:
      case SExpr::Kind::kPair:
      case SExpr::Kind::kVec:
        return Constructor(s, theta);
    }
    return nullptr;
  }

 private:
  ChorTypeP Infer(const ExprP& e, const PartySet& theta, const std::string& x,
                  const SourceSpan& span) {
    TypeResult r = Typecheck(Env(theta), e);
    if (r.ok()) return r.type;
    if (Undetermined(*r.error)) {
      throw DesugarFail{
          SyntaxError{SyntaxError::Kind::kDesugar, span,
                      fmt::format("cannot infer the type bound to {}; add a "
                                  "type annotation ({})",
                                  x, r.error->detail)},
          std::nullopt};
    }
    throw DesugarFail{std::nullopt, r.error};
  }

  ExprP Case(const SExpr& s, const PartySet& theta) {
    ExprP scrut = Run(*s.kids[0], theta);
    ChorTypeP lt, rt;
    TypeResult r = Typecheck(Env(theta), scrut);
    if (!r.ok() && !Undetermined(*r.error)) {
      throw DesugarFail{std::nullopt, r.error};
    }
    if (r.ok()) {
      std::optional<ChorTypeP> m = MaskType(r.type, s.parties);
      if (m && (*m)->kind == ChorType::Kind::kData &&
          (*m)->data->kind == DataType::Kind::kSum) {
        lt = ChorType::Data((*m)->data->left, s.parties);
        rt = ChorType::Data((*m)->data->right, s.parties);
      }
    }
    auto branch = [&](const std::string& x, const ChorTypeP& t,
                      const SExpr& body) {
      gamma_.emplace_back(x, t);
      ExprP out = Run(body, s.parties);
      gamma_.pop_back();
      return out;
    };
    ExprP l = branch(s.left_var, lt, *s.kids[1]);
    ExprP rr = branch(s.right_var, rt, *s.kids[2]);
    return Expr::Case(s.parties, std::move(scrut), s.left_var, std::move(l),
                      s.right_var, std::move(rr), s.span);
  }

  // Case binders of unknown type are left out of the checker's environment,
  // together with whatever they shadow.
  TypeEnv Env(const PartySet& theta) const {
    TypeEnv env{{}, theta};
    std::set<std::string> hidden;
    for (auto it = gamma_.rbegin(); it != gamma_.rend(); ++it) {
      if (hidden.count(it->first)) continue;
      if (it->second == nullptr) {
        hidden.insert(it->first);
      } else {
        env.bindings.push_back(*it);
      }
    }
    std::reverse(env.bindings.begin(), env.bindings.end());
    return env;
  }

  bool Undetermined(const TypeError& err) const {
    if (err.kind == TypeErrorKind::kAmbiguousSum) return true;
    if (err.kind != TypeErrorKind::kUnboundVar) return false;
    for (const auto& [name, t] : gamma_) {
      if (t == nullptr && err.detail == "unbound variable " + name) return true;
    }
    return false;
  }

  std::string Fresh() {
    while (true) {
      std::string name = fmt::format("tmp${}", ++counter_);
      if (taken_.insert(name).second) return name;
    }
  }

  // Operands that are not values are bound to temporaries first, left to
  // right.
  ExprP Constructor(const SExpr& s, const PartySet& theta) {
    std::vector<ValueP> operands;
    std::vector<std::tuple<std::string, ChorTypeP, ExprP>> hoisted;
    for (const SExprP& k : s.kids) {
      ExprP e = Run(*k, theta);
      if (e->is_value()) {
        operands.push_back(e->value);
        continue;
      }
      std::string tmp = Fresh();
      ChorTypeP t = Infer(e, theta, tmp, k->span);
      operands.push_back(Value::Var(tmp, k->span));
      hoisted.emplace_back(tmp, t, e);
    }
    ValueP v;
    switch (s.kind) {
      case SExpr::Kind::kInl:
        v = Value::Inl(operands[0], s.span);
        break;
      case SExpr::Kind::kInr:
        v = Value::Inr(operands[0], s.span);
        break;
      case SExpr::Kind::kPair:
        v = Value::Pair(operands[0], operands[1], s.span);
        break;
      default:
        v = Value::Vec(std::move(operands), s.span);
        break;
    }
    ExprP out = Expr::Val(std::move(v));
    for (auto it = hoisted.rbegin(); it != hoisted.rend(); ++it) {
      auto& [tmp, t, e] = *it;
      out = Expr::App(Expr::Val(Value::Lambda(tmp, t, out, theta, e->span)), e,
                      e->span);
    }
    return out;
  }

  std::set<std::string> taken_;
  std::vector<std::pair<std::string, ChorTypeP>> gamma_;
  int counter_ = 0;
};

// ---------------------------------------------------------------------------
// Uniquify

class Uniquifier {
 public:
  explicit Uniquifier(std::set<std::string> used) : used_(std::move(used)) {}

  ExprP Run(const ExprP& e) {
    switch (e->kind) {
      case Expr::Kind::kVal: {
        ValueP v = RunValue(e->value);
        return v == e->value ? e : Expr::Val(std::move(v));
      }
      case Expr::Kind::kApp: {
        ExprP f = Run(e->fn);
        ExprP a = Run(e->arg);
        if (f == e->fn && a == e->arg) return e;
        return Expr::App(std::move(f), std::move(a), e->span);
      }
      case Expr::Kind::kCase: {
        ExprP s = Run(e->arg);
        std::string lx = Bind(e->left_var);
        ExprP l = Run(e->left);
        scope_.pop_back();
        std::string rx = Bind(e->right_var);
        ExprP r = Run(e->right);
        scope_.pop_back();
        if (s == e->arg && l == e->left && r == e->right &&
            lx == e->left_var && rx == e->right_var) {
          return e;
        }
        return Expr::Case(e->guards, std::move(s), std::move(lx), std::move(l),
                          std::move(rx), std::move(r), e->span);
      }
    }
    return e;
  }

 private:
  ValueP RunValue(const ValueP& v) {
    switch (v->kind) {
      case Value::Kind::kVar: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->first != v->name) continue;
          if (it->second == v->name) return v;
          return Value::Var(it->second, v->span);
        }
        return v;
      }
      case Value::Kind::kLambda: {
        std::string x = Bind(v->name);
        ExprP body = Run(v->body);
        scope_.pop_back();
        if (x == v->name && body == v->body) return v;
        return Value::Lambda(std::move(x), v->param_type, std::move(body),
                             v->parties, v->span);
      }
      case Value::Kind::kInl:
      case Value::Kind::kInr:
      case Value::Kind::kPair:
      case Value::Kind::kVec: {
        std::vector<ValueP> elems;
        bool changed = false;
        for (const ValueP& c : v->elems) {
          elems.push_back(RunValue(c));
          changed |= elems.back() != c;
        }
        if (!changed) return v;
        auto out = std::make_shared<Value>(*v);
        out->elems = std::move(elems);
        return out;
      }
      default:
        return v;
    }
  }

  static std::string Base(const std::string& x) {
    size_t cut = x.size();
    while (true) {
      size_t d = cut;
      while (d > 0 && std::isdigit(static_cast<unsigned char>(x[d - 1]))) --d;
      if (d == cut || d == 0 || x[d - 1] != '$') break;
      cut = d - 1;
    }
    return x.substr(0, cut);
  }

  std::string Bind(const std::string& x) {
    std::string name = x;
    if (!used_.insert(name).second) {
      std::string base = Base(x);
      for (int k = 1;; ++k) {
        name = fmt::format("{}${}", base, k);
        if (used_.insert(name).second) break;
      }
    }
    scope_.emplace_back(x, name);
    return name;
  }

  std::set<std::string> used_;
  std::vector<std::pair<std::string, std::string>> scope_;
};

}  // namespace

ParseResult ParseProgram(std::string_view text) {
  ParseResult out;
  try {
    Parser parser(Lex(text));
    out.program = parser.Program();
  } catch (ParseFail& f) {
    out.error = std::move(f.err);
  }
  return out;
}

std::optional<ChorTypeP> ParseType(std::string_view text, std::string* error) {
  try {
    Parser parser(Lex(text));
    return parser.TypeOnly();
  } catch (ParseFail& f) {
    if (error != nullptr) *error = f.err.ToString();
    return std::nullopt;
  }
}

DesugarResult Desugar(const SurfaceProgram& program,
                      std::optional<PartySet> theta) {
  DesugarResult out;
  const SExpr& body = *program.body;
  if (!theta) {
    if (body.kind == SExpr::Kind::kLambda) {
      theta = body.parties;
    } else {
      std::set<PartyName> roles;
      SurfaceRoles(body, roles);
      if (roles.empty()) {
        out.error = SyntaxError{SyntaxError::Kind::kDesugar, body.span,
                                "program mentions no party; give a theta"};
        return out;
      }
      theta = PartySet::Of(std::vector<PartyName>(roles.begin(), roles.end()));
    }
  }
  out.theta = *theta;
  std::set<std::string> names;
  SurfaceNames(body, names);
  try {
    Desugarer d(std::move(names));
    out.expr = d.Run(body, *theta);
  } catch (DesugarFail& f) {
    out.error = std::move(f.syntax);
    out.type_error = std::move(f.type);
  }
  return out;
}

ExprP Uniquify(const ExprP& e) {
  Uniquifier u(FreeVars(*e));
  return u.Run(e);
}

DesugarResult LoadProgram(std::string_view text, std::optional<PartySet> theta) {
  ParseResult parsed = ParseProgram(text);
  if (!parsed.program) {
    DesugarResult out;
    out.error = std::move(parsed.error);
    return out;
  }
  DesugarResult out = Desugar(*parsed.program, std::move(theta));
  if (out.ok()) out.expr = Uniquify(out.expr);
  return out;
}

}  // namespace helam
