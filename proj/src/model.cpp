#include "feedkit/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <variant>

namespace feedkit {

std::string diagnostic_text(const Diagnostic& d) {
  std::string sev =
      d.severity == Diagnostic::Severity::Error ? "error" : "warning";
  return std::to_string(d.line) + ":" + std::to_string(d.col) + ": " + sev +
         "[" + d.code + "]: " + d.message;
}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok {
  Ident,
  Int,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Arrow,
  DotDot,
  Semi,
  ParPar,
  Eq,
  Ne,
  LeCpo,
  Plus,
  Minus,
  Slash,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long num = 0;
  int line = 1, col = 1;
};

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  std::vector<Diagnostic>* diags;

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      Token t;
      t.line = line;
      t.col = col;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                src[pos] == '_')) {
          advance(1);
        }
        t.kind = Tok::Ident;
        t.text = std::string(src.substr(start, pos - start));
        // The arithmetic-mode keyword carries a hyphen.
        if (t.text == "saturate" && src.substr(pos, 5) == "-fail") {
          advance(5);
          t.text = "saturate-fail";
        }
        out.push_back(std::move(t));
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos;
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos]))) {
          advance(1);
        }
        t.kind = Tok::Int;
        t.text = std::string(src.substr(start, pos - start));
        t.num = std::stol(t.text);
        out.push_back(std::move(t));
        continue;
      }
      auto two = src.substr(pos, 2);
      if (two == "->") {
        t.kind = Tok::Arrow;
      } else if (two == "..") {
        t.kind = Tok::DotDot;
      } else if (two == "||") {
        t.kind = Tok::ParPar;
      } else if (two == "!=") {
        t.kind = Tok::Ne;
      } else if (two == "<=") {
        t.kind = Tok::LeCpo;
      } else {
        switch (c) {
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case ',': t.kind = Tok::Comma; break;
          case ';': t.kind = Tok::Semi; break;
          case '=': t.kind = Tok::Eq; break;
          case '+': t.kind = Tok::Plus; break;
          case '-': t.kind = Tok::Minus; break;
          case '/': t.kind = Tok::Slash; break;
          default: {
            diags->push_back({Diagnostic::Severity::Error, line, col,
                              "syntax",
                              std::string("unexpected character '") + c +
                                  "'"});
            advance(1);
            continue;
          }
        }
        advance(1);
        out.push_back(std::move(t));
        continue;
      }
      advance(2);
      out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
  }
};

// ---------------------------------------------------------------- AST

struct PExpr {
  enum class K { Ident, Int, Bot, Bin, Call };
  K k = K::Ident;
  std::string name;
  long num = 0;
  char op = 0;
  std::vector<PExpr> args;
  int line = 0, col = 0;
};

struct CmpAst {
  enum class Op { Eq, Ne, LeqCpo, LeNum, LtNum, GeNum, GtNum };
  Op op = Op::Eq;
  PExpr lhs, rhs;
  int line = 0, col = 0;
};

struct RowAst {
  std::vector<PExpr> ins;
  bool fail = false;
  bool has_outs = false;
  std::vector<PExpr> outs;
  std::vector<CmpAst> guard;
  int line = 0, col = 0;
};

struct DomainAst {
  std::string name;
  bool is_range = false;
  long lo = 0, hi = 0;
  bool saturate = false;
  bool lifted = false;
  std::vector<std::string> atoms;
  int line = 0, col = 0;
};

struct RfuAst {
  std::string name;
  std::vector<std::string> ins, outs;
  std::vector<RowAst> rows;
  int line = 0, col = 0;
};

struct SpecAst {
  std::string name;
  std::vector<std::string> ins, outs;
  std::vector<RowAst> legal_rows, rel_rows;
  int line = 0, col = 0;
};

struct StsAst {
  std::string name;
  std::vector<std::string> state, ins, outs;
  std::vector<RowAst> init_rows, legal_rows, trans_rows;
  int line = 0, col = 0;
};

struct FeedbackAst {
  std::string name, target;
  long in_begin = 0, in_end = 0, out_begin = 0, out_end = 0;
  int line = 0, col = 0;
};

struct CExprAst {
  enum class K { Name, Serial, Parallel, Cross, Choice };
  K k = K::Name;
  std::string name;
  std::vector<CExprAst> args;
  int line = 0, col = 0;
};

struct ComposeAst {
  std::string name;
  CExprAst expr;
  int line = 0, col = 0;
};

using DeclAst =
    std::variant<DomainAst, RfuAst, SpecAst, StsAst, FeedbackAst, ComposeAst>;

bool is_top_keyword(const Token& t) {
  return t.kind == Tok::Ident &&
         (t.text == "domain" || t.text == "rfu" || t.text == "spec" ||
          t.text == "sts" || t.text == "feedback" || t.text == "compose");
}

// ---------------------------------------------------------------- parser

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  std::vector<Diagnostic>& diags;

  const Token& peek(std::size_t ahead = 0) const {
    return toks[std::min(pos + ahead, toks.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks[pos];
    if (pos + 1 < toks.size()) ++pos;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(const char* kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  bool eat(Tok k) {
    if (at(k)) {
      next();
      return true;
    }
    return false;
  }
  bool eat_kw(const char* kw) {
    if (at_kw(kw)) {
      next();
      return true;
    }
    return false;
  }

  void error(const Token& t, const std::string& msg,
             const std::string& code = "syntax") {
    diags.push_back({Diagnostic::Severity::Error, t.line, t.col, code, msg});
  }

  void expect(Tok k, const char* what) {
    if (!eat(k)) {
      error(peek(), std::string("expected ") + what);
      throw Error("parse");
    }
  }

  std::string expect_ident(const char* what) {
    if (!at(Tok::Ident)) {
      error(peek(), std::string("expected ") + what);
      throw Error("parse");
    }
    return next().text;
  }

  void expect_kw(const char* kw) {
    if (!eat_kw(kw)) {
      error(peek(), std::string("expected '") + kw + "'");
      throw Error("parse");
    }
  }

  long expect_int(const char* what) {
    bool neg = eat(Tok::Minus);
    if (!at(Tok::Int)) {
      error(peek(), std::string("expected ") + what);
      throw Error("parse");
    }
    long v = next().num;
    return neg ? -v : v;
  }

  std::vector<DeclAst> run() {
    std::vector<DeclAst> decls;
    while (!at(Tok::End)) {
      try {
        if (at_kw("domain")) {
          decls.push_back(parse_domain());
        } else if (at_kw("rfu")) {
          decls.push_back(parse_rfu());
        } else if (at_kw("spec")) {
          decls.push_back(parse_spec());
        } else if (at_kw("sts")) {
          decls.push_back(parse_sts());
        } else if (at_kw("feedback")) {
          decls.push_back(parse_feedback());
        } else if (at_kw("compose")) {
          decls.push_back(parse_compose());
        } else {
          error(peek(), "expected a declaration (domain, rfu, spec, sts, "
                        "feedback or compose)");
          throw Error("parse");
        }
      } catch (const Error&) {
        // Recover at the next top-level keyword.
        while (!at(Tok::End) && !is_top_keyword(peek())) next();
      }
    }
    return decls;
  }

  DomainAst parse_domain() {
    DomainAst d;
    d.line = peek().line;
    d.col = peek().col;
    expect_kw("domain");
    d.name = expect_ident("domain name");
    if (eat_kw("range")) {
      d.is_range = true;
      d.lo = expect_int("range lower bound");
      expect(Tok::DotDot, "'..'");
      d.hi = expect_int("range upper bound");
      if (eat_kw("mod")) {
        d.saturate = false;
      } else if (eat_kw("saturate-fail")) {
        d.saturate = true;
      } else {
        error(peek(), "integer-range domains must declare 'mod' or "
                      "'saturate-fail' arithmetic");
        throw Error("parse");
      }
    } else {
      expect(Tok::LBrace, "'{' or 'range'");
      while (at(Tok::Ident)) d.atoms.push_back(next().text);
      expect(Tok::RBrace, "'}'");
      if (d.atoms.empty()) {
        error(peek(), "domain has no atoms", "empty-domain");
        throw Error("parse");
      }
    }
    d.lifted = eat_kw("lifted");
    return d;
  }

  std::vector<std::string> parse_sig_names() {
    expect(Tok::LParen, "'('");
    std::vector<std::string> names;
    if (!at(Tok::RParen)) {
      names.push_back(expect_ident("domain name"));
      while (eat(Tok::Comma)) names.push_back(expect_ident("domain name"));
    }
    expect(Tok::RParen, "')'");
    return names;
  }

  PExpr parse_expr() {
    PExpr lhs = parse_atom_expr();
    while (at(Tok::Plus) || at(Tok::Minus) || at(Tok::Slash)) {
      char op = at(Tok::Plus) ? '+' : at(Tok::Minus) ? '-' : '/';
      int line = peek().line, col = peek().col;
      next();
      PExpr rhs = parse_atom_expr();
      PExpr bin;
      bin.k = PExpr::K::Bin;
      bin.op = op;
      bin.line = line;
      bin.col = col;
      bin.args = {std::move(lhs), std::move(rhs)};
      lhs = std::move(bin);
    }
    return lhs;
  }

  PExpr parse_atom_expr() {
    PExpr e;
    e.line = peek().line;
    e.col = peek().col;
    if (at(Tok::Minus) || at(Tok::Int)) {
      e.k = PExpr::K::Int;
      e.num = expect_int("integer literal");
      return e;
    }
    if (at(Tok::Ident)) {
      std::string name = next().text;
      if (name == "bot") {
        e.k = PExpr::K::Bot;
        return e;
      }
      if (at(Tok::LParen)) {
        e.k = PExpr::K::Call;
        e.name = name;
        next();
        if (!at(Tok::RParen)) {
          e.args.push_back(parse_expr());
          while (eat(Tok::Comma)) e.args.push_back(parse_expr());
        }
        expect(Tok::RParen, "')'");
        return e;
      }
      e.k = PExpr::K::Ident;
      e.name = name;
      return e;
    }
    error(peek(), "expected an expression");
    throw Error("parse");
  }

  std::vector<PExpr> parse_tuple() {
    expect(Tok::LParen, "'('");
    std::vector<PExpr> items;
    if (!at(Tok::RParen)) {
      items.push_back(parse_expr());
      while (eat(Tok::Comma)) items.push_back(parse_expr());
    }
    expect(Tok::RParen, "')'");
    return items;
  }

  std::vector<CmpAst> parse_guard() {
    std::vector<CmpAst> guard;
    if (!eat_kw("where")) return guard;
    guard.push_back(parse_cmp());
    while (eat_kw("and")) guard.push_back(parse_cmp());
    return guard;
  }

  CmpAst parse_cmp() {
    CmpAst c;
    c.lhs = parse_expr();
    c.line = peek().line;
    c.col = peek().col;
    if (eat(Tok::Eq)) {
      c.op = CmpAst::Op::Eq;
    } else if (eat(Tok::Ne)) {
      c.op = CmpAst::Op::Ne;
    } else if (eat(Tok::LeCpo)) {
      c.op = CmpAst::Op::LeqCpo;
    } else if (eat_kw("le")) {
      c.op = CmpAst::Op::LeNum;
    } else if (eat_kw("lt")) {
      c.op = CmpAst::Op::LtNum;
    } else if (eat_kw("ge")) {
      c.op = CmpAst::Op::GeNum;
    } else if (eat_kw("gt")) {
      c.op = CmpAst::Op::GtNum;
    } else {
      error(peek(), "expected a comparison operator");
      throw Error("parse");
    }
    c.rhs = parse_expr();
    return c;
  }

  RowAst parse_row() {
    RowAst r;
    r.line = peek().line;
    r.col = peek().col;
    r.ins = parse_tuple();
    expect(Tok::Arrow, "'->'");
    if (eat_kw("fail")) {
      r.fail = true;
    } else {
      r.has_outs = true;
      r.outs = parse_tuple();
    }
    r.guard = parse_guard();
    return r;
  }

  RfuAst parse_rfu() {
    RfuAst r;
    r.line = peek().line;
    r.col = peek().col;
    expect_kw("rfu");
    r.name = expect_ident("component name");
    r.ins = parse_sig_names();
    expect(Tok::Arrow, "'->'");
    r.outs = parse_sig_names();
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace) && !at(Tok::End)) r.rows.push_back(parse_row());
    expect(Tok::RBrace, "'}'");
    return r;
  }

  SpecAst parse_spec() {
    SpecAst s;
    s.line = peek().line;
    s.col = peek().col;
    expect_kw("spec");
    s.name = expect_ident("component name");
    s.ins = parse_sig_names();
    expect(Tok::Arrow, "'->'");
    s.outs = parse_sig_names();
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      if (eat_kw("legal")) {
        RowAst r;
        r.line = peek().line;
        r.col = peek().col;
        r.ins = parse_tuple();
        r.guard = parse_guard();
        s.legal_rows.push_back(std::move(r));
      } else if (eat_kw("rel")) {
        s.rel_rows.push_back(parse_row());
      } else {
        error(peek(), "expected 'legal' or 'rel'");
        throw Error("parse");
      }
    }
    expect(Tok::RBrace, "'}'");
    return s;
  }

  StsAst parse_sts() {
    StsAst s;
    s.line = peek().line;
    s.col = peek().col;
    expect_kw("sts");
    s.name = expect_ident("component name");
    expect_kw("state");
    s.state = parse_sig_names();
    expect_kw("input");
    s.ins = parse_sig_names();
    expect_kw("output");
    s.outs = parse_sig_names();
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      if (eat_kw("init")) {
        RowAst r;
        r.line = peek().line;
        r.col = peek().col;
        r.ins = parse_tuple();
        r.guard = parse_guard();
        s.init_rows.push_back(std::move(r));
      } else if (eat_kw("legal")) {
        RowAst r;
        r.line = peek().line;
        r.col = peek().col;
        r.ins = parse_tuple();
        r.guard = parse_guard();
        s.legal_rows.push_back(std::move(r));
      } else if (eat_kw("trans")) {
        s.trans_rows.push_back(parse_row());
      } else {
        error(peek(), "expected 'init', 'legal' or 'trans'");
        throw Error("parse");
      }
    }
    expect(Tok::RBrace, "'}'");
    return s;
  }

  FeedbackAst parse_feedback() {
    FeedbackAst f;
    f.line = peek().line;
    f.col = peek().col;
    expect_kw("feedback");
    f.name = expect_ident("feedback name");
    expect_kw("of");
    f.target = expect_ident("component name");
    expect_kw("in");
    f.in_begin = expect_int("wire index");
    expect(Tok::DotDot, "'..'");
    f.in_end = expect_int("wire index");
    expect_kw("out");
    f.out_begin = expect_int("wire index");
    expect(Tok::DotDot, "'..'");
    f.out_end = expect_int("wire index");
    return f;
  }

  ComposeAst parse_compose() {
    ComposeAst c;
    c.line = peek().line;
    c.col = peek().col;
    expect_kw("compose");
    c.name = expect_ident("component name");
    expect(Tok::Eq, "'='");
    c.expr = parse_cexpr();
    return c;
  }

  CExprAst parse_cexpr() {
    CExprAst lhs = parse_cterm();
    while (eat(Tok::Semi)) {
      CExprAst rhs = parse_cterm();
      CExprAst serial;
      serial.k = CExprAst::K::Serial;
      serial.line = lhs.line;
      serial.col = lhs.col;
      serial.args = {std::move(lhs), std::move(rhs)};
      lhs = std::move(serial);
    }
    return lhs;
  }

  CExprAst parse_cterm() {
    CExprAst lhs = parse_cfactor();
    while (eat(Tok::ParPar)) {
      CExprAst rhs = parse_cfactor();
      CExprAst par;
      par.k = CExprAst::K::Parallel;
      par.line = lhs.line;
      par.col = lhs.col;
      par.args = {std::move(lhs), std::move(rhs)};
      lhs = std::move(par);
    }
    return lhs;
  }

  CExprAst parse_cfactor() {
    CExprAst e;
    e.line = peek().line;
    e.col = peek().col;
    if (eat(Tok::LParen)) {
      e = parse_cexpr();
      expect(Tok::RParen, "')'");
      return e;
    }
    std::string name = expect_ident("component name");
    if ((name == "cross" || name == "choice") && at(Tok::LParen)) {
      next();
      e.k = name == "cross" ? CExprAst::K::Cross : CExprAst::K::Choice;
      e.args.push_back(parse_cexpr());
      expect(Tok::Comma, "','");
      e.args.push_back(parse_cexpr());
      expect(Tok::RParen, "')'");
      return e;
    }
    e.k = CExprAst::K::Name;
    e.name = name;
    return e;
  }
};

// ---------------------------------------------------------------- printer

struct Printer {
  std::string out;

  void expr(const PExpr& e) {
    switch (e.k) {
      case PExpr::K::Ident:
        out += e.name;
        break;
      case PExpr::K::Int:
        out += std::to_string(e.num);
        break;
      case PExpr::K::Bot:
        out += "bot";
        break;
      case PExpr::K::Bin:
        expr(e.args[0]);
        out += ' ';
        out += e.op;
        out += ' ';
        expr(e.args[1]);
        break;
      case PExpr::K::Call:
        out += e.name + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i) out += ", ";
          expr(e.args[i]);
        }
        out += ")";
        break;
    }
  }

  void tuple(const std::vector<PExpr>& items) {
    out += "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      expr(items[i]);
    }
    out += ")";
  }

  void guard(const std::vector<CmpAst>& g) {
    if (g.empty()) return;
    out += " where ";
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i) out += " and ";
      expr(g[i].lhs);
      switch (g[i].op) {
        case CmpAst::Op::Eq: out += " = "; break;
        case CmpAst::Op::Ne: out += " != "; break;
        case CmpAst::Op::LeqCpo: out += " <= "; break;
        case CmpAst::Op::LeNum: out += " le "; break;
        case CmpAst::Op::LtNum: out += " lt "; break;
        case CmpAst::Op::GeNum: out += " ge "; break;
        case CmpAst::Op::GtNum: out += " gt "; break;
      }
      expr(g[i].rhs);
    }
  }

  void row(const char* prefix, const RowAst& r) {
    out += "  ";
    if (*prefix) {
      out += prefix;
      out += ' ';
    }
    tuple(r.ins);
    if (r.fail || r.has_outs) {
      out += " -> ";
      if (r.fail) {
        out += "fail";
      } else {
        tuple(r.outs);
      }
    }
    guard(r.guard);
    out += "\n";
  }

  void sig(const std::vector<std::string>& names) {
    out += "(";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ", ";
      out += names[i];
    }
    out += ")";
  }

  void cexpr(const CExprAst& e, int parent_prec) {
    // precedence: serial 0, parallel 1, atoms 2
    switch (e.k) {
      case CExprAst::K::Name:
        out += e.name;
        break;
      case CExprAst::K::Serial: {
        if (parent_prec > 0) out += "(";
        cexpr(e.args[0], 0);
        out += " ; ";
        cexpr(e.args[1], 1);
        if (parent_prec > 0) out += ")";
        break;
      }
      case CExprAst::K::Parallel: {
        if (parent_prec > 1) out += "(";
        cexpr(e.args[0], 1);
        out += " || ";
        cexpr(e.args[1], 2);
        if (parent_prec > 1) out += ")";
        break;
      }
      case CExprAst::K::Cross:
      case CExprAst::K::Choice: {
        out += e.k == CExprAst::K::Cross ? "cross(" : "choice(";
        cexpr(e.args[0], 0);
        out += ", ";
        cexpr(e.args[1], 0);
        out += ")";
        break;
      }
    }
  }

  void decl(const DeclAst& d) {
    if (const auto* dom = std::get_if<DomainAst>(&d)) {
      out += "domain " + dom->name;
      if (dom->is_range) {
        out += " range " + std::to_string(dom->lo) + ".." +
               std::to_string(dom->hi);
        out += dom->saturate ? " saturate-fail" : " mod";
      } else {
        out += " {";
        for (const auto& a : dom->atoms) out += " " + a;
        out += " }";
      }
      if (dom->lifted) out += " lifted";
      out += "\n";
    } else if (const auto* r = std::get_if<RfuAst>(&d)) {
      out += "rfu " + r->name + " ";
      sig(r->ins);
      out += " -> ";
      sig(r->outs);
      out += " {\n";
      for (const auto& row_ast : r->rows) row("", row_ast);
      out += "}\n";
    } else if (const auto* s = std::get_if<SpecAst>(&d)) {
      out += "spec " + s->name + " ";
      sig(s->ins);
      out += " -> ";
      sig(s->outs);
      out += " {\n";
      for (const auto& row_ast : s->legal_rows) row("legal", row_ast);
      for (const auto& row_ast : s->rel_rows) row("rel", row_ast);
      out += "}\n";
    } else if (const auto* s = std::get_if<StsAst>(&d)) {
      out += "sts " + s->name + " state ";
      sig(s->state);
      out += " input ";
      sig(s->ins);
      out += " output ";
      sig(s->outs);
      out += " {\n";
      for (const auto& row_ast : s->init_rows) row("init", row_ast);
      for (const auto& row_ast : s->legal_rows) row("legal", row_ast);
      for (const auto& row_ast : s->trans_rows) row("trans", row_ast);
      out += "}\n";
    } else if (const auto* f = std::get_if<FeedbackAst>(&d)) {
      out += "feedback " + f->name + " of " + f->target + " in " +
             std::to_string(f->in_begin) + ".." + std::to_string(f->in_end) +
             " out " + std::to_string(f->out_begin) + ".." +
             std::to_string(f->out_end) + "\n";
    } else if (const auto* c = std::get_if<ComposeAst>(&d)) {
      out += "compose " + c->name + " = ";
      cexpr(c->expr, 0);
      out += "\n";
    }
  }

  std::string run(const std::vector<DeclAst>& decls) {
    for (std::size_t i = 0; i < decls.size(); ++i) {
      if (i) out += "\n";
      decl(decls[i]);
    }
    return out;
  }
};

// ---------------------------------------------------------------- elaborator

struct DomainInfo {
  WireRef wire;
  bool is_range = false;
  long lo = 0, hi = 0;
  bool saturate = false;
};

struct TExpr {
  enum class K { Var, Lit, Bin, Call };
  K k = K::Lit;
  std::size_t slot = 0;           // Var
  Value lit = kBot;               // Lit
  char op = 0;                    // Bin
  const DomainInfo* dom = nullptr;
  std::vector<TExpr> args;
};

struct TCmp {
  CmpAst::Op op;
  TExpr lhs, rhs;
};

constexpr std::size_t kRowInstanceCap = 1u << 20;

}  // namespace

class Elaborator {
 public:
  Elaborator(std::vector<Diagnostic>& diags) : diags_(diags) {}

  std::optional<Model> run(const std::vector<DeclAst>& decls);

 private:
  std::vector<Diagnostic>& diags_;
  std::map<std::string, DomainInfo> domains_;
  Model model_;
  bool failed_ = false;

  void error(int line, int col, const std::string& code,
             const std::string& msg) {
    diags_.push_back({Diagnostic::Severity::Error, line, col, code, msg});
    failed_ = true;
  }

  bool name_taken(const std::string& name, int line, int col) {
    if (model_.kind_of(name)) {
      error(line, col, "duplicate-name",
            "component '" + name + "' is already defined");
      return true;
    }
    return false;
  }

  const DomainInfo* lookup_domain(const std::string& name, int line, int col) {
    auto it = domains_.find(name);
    if (it == domains_.end()) {
      error(line, col, "unknown-name", "unknown domain '" + name + "'");
      return nullptr;
    }
    return &it->second;
  }

  std::optional<Signature> build_sig(const std::vector<std::string>& names,
                                     int line, int col) {
    Signature sig;
    for (const auto& n : names) {
      const DomainInfo* d = lookup_domain(n, line, col);
      if (!d) return std::nullopt;
      sig.push_back(d->wire);
    }
    return sig;
  }

  const DomainInfo* info_of(const WireRef& wire) {
    auto it = domains_.find(wire->name());
    return it == domains_.end() ? nullptr : &it->second;
  }

  // Binding environment for one row.
  struct RowEnv {
    std::map<std::string, std::size_t> slots;
    std::vector<const DomainInfo*> slot_dom;
  };

  // Values of `from` may flow into `to`. Integer ranges embed when they
  // start at the same lower bound (atom indices then coincide) and share the
  // arithmetic mode; enumerated domains need identical atom lists.
  static bool assignable(const DomainInfo& from, const DomainInfo& to) {
    if (from.is_range != to.is_range) return false;
    if (!from.is_range) return from.wire->atoms() == to.wire->atoms();
    return from.lo == to.lo && from.hi <= to.hi &&
           from.saturate == to.saturate;
  }

  // Elaborates an expression against an optional expected domain. Fresh
  // variables are admitted only as a whole output position.
  std::optional<TExpr> elaborate_expr(const PExpr& e, RowEnv& env,
                                      const DomainInfo* expected,
                                      bool allow_fresh) {
    switch (e.k) {
      case PExpr::K::Ident: {
        auto it = env.slots.find(e.name);
        if (it != env.slots.end()) {
          const DomainInfo* d = env.slot_dom[it->second];
          if (expected && !assignable(*d, *expected)) {
            error(e.line, e.col, "type",
                  "variable '" + e.name + "' of domain '" + d->wire->name() +
                      "' does not fit domain '" + expected->wire->name() +
                      "'");
            return std::nullopt;
          }
          TExpr t;
          t.k = TExpr::K::Var;
          t.slot = it->second;
          t.dom = d;
          return t;
        }
        if (expected) {
          // An atom of the expected domain, or a fresh demonic variable.
          const auto& atoms = expected->wire->atoms();
          auto pos = std::find(atoms.begin(), atoms.end(), e.name);
          if (pos != atoms.end()) {
            TExpr t;
            t.k = TExpr::K::Lit;
            t.lit = static_cast<Value>(pos - atoms.begin());
            t.dom = expected;
            return t;
          }
          if (allow_fresh) {
            std::size_t slot = env.slot_dom.size();
            env.slots[e.name] = slot;
            env.slot_dom.push_back(expected);
            TExpr t;
            t.k = TExpr::K::Var;
            t.slot = slot;
            t.dom = expected;
            return t;
          }
        }
        error(e.line, e.col, "unknown-name",
              "unbound variable '" + e.name + "'");
        return std::nullopt;
      }
      case PExpr::K::Int: {
        if (!expected) {
          error(e.line, e.col, "type",
                "numeric literal needs a typed context");
          return std::nullopt;
        }
        if (!expected->is_range) {
          error(e.line, e.col, "type",
                "numeric literal used with non-integer domain '" +
                    expected->wire->name() + "'");
          return std::nullopt;
        }
        if (e.num < expected->lo || e.num > expected->hi) {
          error(e.line, e.col, "range",
                "literal " + std::to_string(e.num) + " is outside " +
                    std::to_string(expected->lo) + ".." +
                    std::to_string(expected->hi));
          return std::nullopt;
        }
        TExpr t;
        t.k = TExpr::K::Lit;
        t.lit = static_cast<Value>(e.num - expected->lo);
        t.dom = expected;
        return t;
      }
      case PExpr::K::Bot: {
        TExpr t;
        t.k = TExpr::K::Lit;
        t.lit = kBot;
        t.dom = expected;
        return t;
      }
      case PExpr::K::Bin: {
        auto lhs = elaborate_expr(e.args[0], env, expected, false);
        if (!lhs) return std::nullopt;
        // Arithmetic runs in the target domain, so embedded narrower ranges
        // do not wrap early.
        const DomainInfo* d =
            expected && expected->is_range ? expected : lhs->dom;
        auto rhs = elaborate_expr(e.args[1], env, d, false);
        if (!rhs) return std::nullopt;
        if (!d) d = rhs->dom;
        if (!d || !d->is_range) {
          error(e.line, e.col, "type",
                "arithmetic needs an integer-range domain");
          return std::nullopt;
        }
        if (lhs->dom && !assignable(*lhs->dom, *d)) {
          error(e.line, e.col, "type", "arithmetic operands do not fit");
          return std::nullopt;
        }
        if (expected && !assignable(*d, *expected)) {
          error(e.line, e.col, "type", "arithmetic result does not fit");
          return std::nullopt;
        }
        TExpr t;
        t.k = TExpr::K::Bin;
        t.op = e.op;
        t.dom = d;
        t.args = {*lhs, *rhs};
        return t;
      }
      case PExpr::K::Call: {
        if (e.name != "and_bot") {
          error(e.line, e.col, "unknown-name",
                "unknown builtin '" + e.name + "'");
          return std::nullopt;
        }
        if (e.args.size() != 2) {
          error(e.line, e.col, "type", "and_bot takes two arguments");
          return std::nullopt;
        }
        auto lhs = elaborate_expr(e.args[0], env, expected, false);
        if (!lhs) return std::nullopt;
        const DomainInfo* d = lhs->dom ? lhs->dom : expected;
        auto rhs = elaborate_expr(e.args[1], env, d, false);
        if (!rhs) return std::nullopt;
        if (!d) d = rhs->dom;
        if (!d || d->wire->atoms() != std::vector<std::string>{"false",
                                                               "true"}) {
          error(e.line, e.col, "type",
                "and_bot needs a { false true } domain");
          return std::nullopt;
        }
        TExpr t;
        t.k = TExpr::K::Call;
        t.dom = d;
        t.args = {*lhs, *rhs};
        return t;
      }
    }
    return std::nullopt;
  }

  std::optional<TExpr> elaborate_pattern(const PExpr& e, RowEnv& env,
                                         const DomainInfo& wire) {
    if (e.k == PExpr::K::Bin || e.k == PExpr::K::Call) {
      error(e.line, e.col, "syntax",
            "patterns admit variables, literals and bot only");
      return std::nullopt;
    }
    if (e.k == PExpr::K::Bot && !wire.wire->lifted()) {
      error(e.line, e.col, "type",
            "bot pattern on non-lifted wire '" + wire.wire->name() + "'");
      return std::nullopt;
    }
    if (e.k == PExpr::K::Ident) {
      auto it = env.slots.find(e.name);
      const auto& atoms = wire.wire->atoms();
      bool is_atom =
          std::find(atoms.begin(), atoms.end(), e.name) != atoms.end();
      if (it == env.slots.end() && !is_atom) {
        std::size_t slot = env.slot_dom.size();
        env.slots[e.name] = slot;
        env.slot_dom.push_back(&wire);
        TExpr t;
        t.k = TExpr::K::Var;
        t.slot = slot;
        t.dom = &wire;
        return t;
      }
      if (it != env.slots.end()) {
        if (!same_wire(*env.slot_dom[it->second]->wire, *wire.wire)) {
          error(e.line, e.col, "type",
                "variable '" + e.name + "' is reused on a different domain");
          return std::nullopt;
        }
        TExpr t;
        t.k = TExpr::K::Var;
        t.slot = it->second;
        t.dom = &wire;
        return t;
      }
    }
    return elaborate_expr(e, env, &wire, false);
  }

  static long decode(const DomainInfo& d, Value v) { return d.lo + v; }

  static Value encode(const DomainInfo& d, long v) {
    long span = d.hi - d.lo + 1;
    if (d.saturate) {
      v = std::clamp(v, d.lo, d.hi);
    } else {
      v = d.lo + (((v - d.lo) % span) + span) % span;
    }
    return static_cast<Value>(v - d.lo);
  }

  // Returns false on an evaluation error (reported once per row).
  bool eval(const TExpr& e, const std::vector<Value>& vals, Value& out,
            int line, int col) {
    switch (e.k) {
      case TExpr::K::Var:
        out = vals[e.slot];
        return true;
      case TExpr::K::Lit:
        out = e.lit;
        return true;
      case TExpr::K::Bin: {
        Value a, b;
        if (!eval(e.args[0], vals, a, line, col) ||
            !eval(e.args[1], vals, b, line, col)) {
          return false;
        }
        if (a == kBot || b == kBot) {
          out = kBot;
          return true;
        }
        long x = decode(*e.dom, a), y = decode(*e.dom, b);
        long r = 0;
        switch (e.op) {
          case '+': r = x + y; break;
          case '-': r = x - y; break;
          case '/':
            if (y == 0) {
              error(line, col, "eval", "division by zero in row evaluation");
              return false;
            }
            r = x / y;
            break;
        }
        out = encode(*e.dom, r);
        return true;
      }
      case TExpr::K::Call: {
        Value a, b;
        if (!eval(e.args[0], vals, a, line, col) ||
            !eval(e.args[1], vals, b, line, col)) {
          return false;
        }
        // The gate returns false as soon as one input is false, even when
        // the other is unknown.
        if (a == 0 || b == 0) {
          out = 0;
        } else if (a == kBot || b == kBot) {
          out = kBot;
        } else {
          out = 1;
        }
        return true;
      }
    }
    return false;
  }

  bool eval_cmp(const TCmp& c, const std::vector<Value>& vals, bool& out,
                int line, int col) {
    Value a, b;
    if (!eval(c.lhs, vals, a, line, col) ||
        !eval(c.rhs, vals, b, line, col)) {
      return false;
    }
    switch (c.op) {
      case CmpAst::Op::Eq:
        out = a == b;
        return true;
      case CmpAst::Op::Ne:
        out = a != b;
        return true;
      case CmpAst::Op::LeqCpo:
        out = a == kBot || a == b;
        return true;
      default: {
        if (a == kBot || b == kBot) {
          out = false;
          return true;
        }
        long x = decode(*c.lhs.dom, a), y = decode(*c.rhs.dom, b);
        switch (c.op) {
          case CmpAst::Op::LeNum: out = x <= y; break;
          case CmpAst::Op::LtNum: out = x < y; break;
          case CmpAst::Op::GeNum: out = x >= y; break;
          case CmpAst::Op::GtNum: out = x > y; break;
          default: return false;
        }
        return true;
      }
    }
  }

  std::optional<std::vector<TCmp>> elaborate_guard(
      const std::vector<CmpAst>& guard, RowEnv& env) {
    std::vector<TCmp> out;
    for (const auto& c : guard) {
      auto lhs = try_elaborate_untyped(c.lhs, env);
      std::optional<TExpr> rhs;
      if (lhs) {
        rhs = elaborate_expr(c.rhs, env, lhs->dom, false);
      } else {
        rhs = try_elaborate_untyped(c.rhs, env);
        if (!rhs) {
          error(c.line, c.col, "type",
                "comparison with no typed side (bind a variable first)");
          return std::nullopt;
        }
        lhs = elaborate_expr(c.lhs, env, rhs->dom, false);
      }
      if (!lhs || !rhs) return std::nullopt;
      bool numeric = c.op == CmpAst::Op::LeNum || c.op == CmpAst::Op::LtNum ||
                     c.op == CmpAst::Op::GeNum || c.op == CmpAst::Op::GtNum;
      if (numeric &&
          (!lhs->dom || !rhs->dom || !lhs->dom->is_range)) {
        error(c.line, c.col, "type",
              "numeric comparison needs integer-range operands");
        return std::nullopt;
      }
      out.push_back({c.op, *lhs, *rhs});
    }
    return out;
  }

  // Guards may mention atoms before variables; probe without a context and
  // fall back to the other side's domain.
  std::optional<TExpr> try_elaborate_untyped(const PExpr& e, RowEnv& env) {
    if (e.k == PExpr::K::Int || e.k == PExpr::K::Bot) return std::nullopt;
    if (e.k == PExpr::K::Ident && !env.slots.count(e.name)) {
      return std::nullopt;
    }
    std::size_t before = diags_.size();
    bool failed_before = failed_;
    auto r = elaborate_expr(e, env, nullptr, false);
    if (!r) {
      diags_.resize(before);
      failed_ = failed_before;
      return std::nullopt;
    }
    return r;
  }

  // Expands one row into concrete (input, output) pairs. Output signature
  // may be empty (legal/init rows).
  bool expand_row(const RowAst& row, const Signature& in_sig,
                  const Signature& out_sig, std::vector<Rfu::Pair>& out) {
    RowEnv env;
    if (row.ins.size() != in_sig.size()) {
      error(row.line, row.col, "arity",
            "row has " + std::to_string(row.ins.size()) +
                " input patterns, expected " + std::to_string(in_sig.size()));
      return false;
    }
    std::vector<TExpr> ins, outs;
    for (std::size_t i = 0; i < row.ins.size(); ++i) {
      const DomainInfo* d = info_of(in_sig[i]);
      auto t = elaborate_pattern(row.ins[i], env, *d);
      if (!t) return false;
      ins.push_back(*t);
    }
    if (row.has_outs) {
      if (row.outs.size() != out_sig.size()) {
        error(row.line, row.col, "arity",
              "row has " + std::to_string(row.outs.size()) +
                  " output expressions, expected " +
                  std::to_string(out_sig.size()));
        return false;
      }
      for (std::size_t i = 0; i < row.outs.size(); ++i) {
        const DomainInfo* d = info_of(out_sig[i]);
        auto t = elaborate_expr(row.outs[i], env, d, true);
        if (!t) return false;
        outs.push_back(*t);
      }
    }
    auto guard = elaborate_guard(row.guard, env);
    if (!guard) return false;

    // Odometer over the carriers of all bound variables.
    std::vector<std::vector<Value>> carriers;
    std::size_t total = 1;
    for (const DomainInfo* d : env.slot_dom) {
      std::vector<Value> c;
      if (d->wire->lifted()) c.push_back(kBot);
      for (std::size_t a = 0; a < d->wire->atom_count(); ++a) {
        c.push_back(static_cast<Value>(a));
      }
      carriers.push_back(std::move(c));
      total *= carriers.back().size();
      if (total > kRowInstanceCap) {
        error(row.line, row.col, "budget", "row expands to too many instances");
        return false;
      }
    }
    std::vector<std::size_t> idx(carriers.size(), 0);
    std::vector<Value> vals(carriers.size());
    for (std::size_t n = 0; n < total; ++n) {
      for (std::size_t i = 0; i < carriers.size(); ++i) {
        vals[i] = carriers[i][idx[i]];
      }
      bool keep = true;
      for (const auto& c : *guard) {
        bool b = false;
        if (!eval_cmp(c, vals, b, row.line, row.col)) return false;
        if (!b) {
          keep = false;
          break;
        }
      }
      if (keep) {
        std::vector<Value> iv(in_sig.size());
        bool ok = true;
        for (std::size_t i = 0; i < ins.size() && ok; ++i) {
          ok = eval(ins[i], vals, iv[i], row.line, row.col);
        }
        if (!ok) return false;
        Point input = Point::tuple(std::move(iv));
        if (row.fail) {
          out.emplace_back(std::move(input), Point::fail());
        } else if (row.has_outs) {
          std::vector<Value> ov(out_sig.size());
          for (std::size_t i = 0; i < outs.size() && ok; ++i) {
            ok = eval(outs[i], vals, ov[i], row.line, row.col);
            if (ok && ov[i] == kBot && !out_sig[i]->lifted()) {
              error(row.line, row.col, "type",
                    "row assigns unknown to non-lifted wire '" +
                        out_sig[i]->name() + "'; add a guard");
              return false;
            }
          }
          if (!ok) return false;
          out.emplace_back(std::move(input), Point::tuple(std::move(ov)));
        } else {
          out.emplace_back(std::move(input), Point::tuple({}));
        }
      }
      for (std::size_t i = carriers.size(); i-- > 0;) {
        if (++idx[i] < carriers[i].size()) break;
        idx[i] = 0;
      }
    }
    return true;
  }

  void do_domain(const DomainAst& d) {
    if (domains_.count(d.name)) {
      error(d.line, d.col, "duplicate-name",
            "domain '" + d.name + "' is already defined");
      return;
    }
    DomainInfo info;
    info.is_range = d.is_range;
    info.lo = d.lo;
    info.hi = d.hi;
    info.saturate = d.saturate;
    std::vector<std::string> atoms = d.atoms;
    if (d.is_range) {
      if (d.hi < d.lo) {
        error(d.line, d.col, "range", "empty integer range");
        return;
      }
      for (long v = d.lo; v <= d.hi; ++v) atoms.push_back(std::to_string(v));
    }
    try {
      info.wire = std::make_shared<WireDomain>(d.name, std::move(atoms),
                                               d.lifted);
    } catch (const Error& e) {
      error(d.line, d.col, "domain", e.what());
      return;
    }
    domains_.emplace(d.name, std::move(info));
  }

  void do_rfu(const RfuAst& r) {
    if (name_taken(r.name, r.line, r.col)) return;
    auto in_sig = build_sig(r.ins, r.line, r.col);
    auto out_sig = build_sig(r.outs, r.line, r.col);
    if (!in_sig || !out_sig) return;
    std::vector<Rfu::Pair> pairs;
    for (const auto& row : r.rows) {
      if (!row.fail && !row.has_outs) {
        error(row.line, row.col, "syntax", "relation row needs outputs");
        return;
      }
      if (!expand_row(row, *in_sig, *out_sig, pairs)) return;
    }
    try {
      model_.rfus_.emplace(r.name, Rfu(*in_sig, *out_sig, std::move(pairs)));
    } catch (const Error& e) {
      error(r.line, r.col, "component", e.what());
    }
  }

  void do_spec(const SpecAst& s) {
    if (name_taken(s.name, s.line, s.col)) return;
    auto in_sig = build_sig(s.ins, s.line, s.col);
    auto out_sig = build_sig(s.outs, s.line, s.col);
    if (!in_sig || !out_sig) return;
    std::vector<Rfu::Pair> legal_pairs;
    for (const auto& row : s.legal_rows) {
      if (!expand_row(row, *in_sig, {}, legal_pairs)) return;
    }
    std::vector<Point> legal;
    for (auto& [p, unused] : legal_pairs) legal.push_back(p);
    std::vector<Rfu::Pair> rel;
    for (const auto& row : s.rel_rows) {
      if (row.fail) {
        error(row.line, row.col, "syntax",
              "spec relations have no fail rows; restrict 'legal' instead");
        return;
      }
      if (!expand_row(row, *in_sig, *out_sig, rel)) return;
    }
    try {
      model_.specs_.emplace(
          s.name, Spec(*in_sig, *out_sig, std::move(legal), std::move(rel)));
    } catch (const Error& e) {
      error(s.line, s.col, "component", e.what());
    }
  }

  void do_sts(const StsAst& s) {
    if (name_taken(s.name, s.line, s.col)) return;
    auto state_sig = build_sig(s.state, s.line, s.col);
    auto in_sig = build_sig(s.ins, s.line, s.col);
    auto out_sig = build_sig(s.outs, s.line, s.col);
    if (!state_sig || !in_sig || !out_sig) return;
    Signature si = concat(*state_sig, *in_sig);
    Signature so = concat(*state_sig, *out_sig);
    std::vector<Rfu::Pair> init_pairs, legal_pairs, trans;
    for (const auto& row : s.init_rows) {
      if (!expand_row(row, *state_sig, {}, init_pairs)) return;
    }
    for (const auto& row : s.legal_rows) {
      if (!expand_row(row, si, {}, legal_pairs)) return;
    }
    for (const auto& row : s.trans_rows) {
      if (row.fail) {
        error(row.line, row.col, "syntax",
              "transition rows have no fail; restrict 'legal' instead");
        return;
      }
      if (!expand_row(row, si, so, trans)) return;
    }
    std::vector<Point> init, legal;
    for (auto& [p, unused] : init_pairs) init.push_back(p);
    for (auto& [p, unused] : legal_pairs) legal.push_back(p);
    try {
      model_.stss_.emplace(
          s.name, Sts(*state_sig, *in_sig, *out_sig, std::move(init),
                      std::move(legal), std::move(trans)));
    } catch (const Error& e) {
      error(s.line, s.col, "component", e.what());
    }
  }

  void do_feedback(const FeedbackAst& f) {
    if (name_taken(f.name, f.line, f.col)) return;
    auto it = model_.rfus_.find(f.target);
    if (it == model_.rfus_.end()) {
      error(f.line, f.col, "unknown-name",
            "feedback target '" + f.target + "' is not a relation");
      return;
    }
    if (f.in_begin < 0 || f.in_end < f.in_begin || f.out_begin < 0 ||
        f.out_end < f.out_begin) {
      error(f.line, f.col, "range", "bad feedback wire range");
      return;
    }
    try {
      model_.feedbacks_.emplace(
          f.name,
          make_shape(it->second, static_cast<std::size_t>(f.in_begin),
                     static_cast<std::size_t>(f.in_end),
                     static_cast<std::size_t>(f.out_begin),
                     static_cast<std::size_t>(f.out_end)));
    } catch (const Error& e) {
      error(f.line, f.col, "feedback", e.what());
    }
  }

  std::optional<Rfu> eval_cexpr(const CExprAst& e) {
    switch (e.k) {
      case CExprAst::K::Name: {
        auto it = model_.rfus_.find(e.name);
        if (it == model_.rfus_.end()) {
          error(e.line, e.col, "unknown-name",
                "unknown relation '" + e.name + "'");
          return std::nullopt;
        }
        return it->second;
      }
      case CExprAst::K::Serial:
      case CExprAst::K::Parallel:
      case CExprAst::K::Cross:
      case CExprAst::K::Choice: {
        auto a = eval_cexpr(e.args[0]);
        auto b = eval_cexpr(e.args[1]);
        if (!a || !b) return std::nullopt;
        try {
          switch (e.k) {
            case CExprAst::K::Serial: return compose_serial(*a, *b);
            case CExprAst::K::Parallel: return parallel(*a, *b);
            case CExprAst::K::Cross: return cross(*a, *b);
            default: return demonic_choice(*a, *b);
          }
        } catch (const Error& err) {
          error(e.line, e.col, "compose", err.what());
          return std::nullopt;
        }
      }
    }
    return std::nullopt;
  }

  void do_compose(const ComposeAst& c) {
    if (name_taken(c.name, c.line, c.col)) return;
    auto r = eval_cexpr(c.expr);
    if (r) model_.rfus_.emplace(c.name, std::move(*r));
  }
};

std::optional<Model> Elaborator::run(const std::vector<DeclAst>& decls) {
  for (const auto& d : decls) {
    std::visit(
        [&](const auto& decl) {
          using T = std::decay_t<decltype(decl)>;
          if constexpr (std::is_same_v<T, DomainAst>) {
            do_domain(decl);
          } else if constexpr (std::is_same_v<T, RfuAst>) {
            do_rfu(decl);
          } else if constexpr (std::is_same_v<T, SpecAst>) {
            do_spec(decl);
          } else if constexpr (std::is_same_v<T, StsAst>) {
            do_sts(decl);
          } else if constexpr (std::is_same_v<T, FeedbackAst>) {
            do_feedback(decl);
          } else {
            do_compose(decl);
          }
        },
        d);
  }
  if (failed_) return std::nullopt;
  for (const auto& [name, info] : domains_) {
    model_.domains_.emplace(name, info.wire);
  }
  model_.printed_ = Printer{}.run(decls);
  return std::move(model_);
}

std::optional<Model::Kind> Model::kind_of(const std::string& name) const {
  if (rfus_.count(name)) return Kind::RfuComponent;
  if (specs_.count(name)) return Kind::SpecComponent;
  if (stss_.count(name)) return Kind::StsComponent;
  if (feedbacks_.count(name)) return Kind::Feedback;
  return std::nullopt;
}

std::vector<std::string> Model::names(Kind k) const {
  std::vector<std::string> out;
  switch (k) {
    case Kind::RfuComponent:
      for (const auto& [n, v] : rfus_) out.push_back(n);
      break;
    case Kind::SpecComponent:
      for (const auto& [n, v] : specs_) out.push_back(n);
      break;
    case Kind::StsComponent:
      for (const auto& [n, v] : stss_) out.push_back(n);
      break;
    case Kind::Feedback:
      for (const auto& [n, v] : feedbacks_) out.push_back(n);
      break;
  }
  return out;
}

namespace {
template <class M>
const typename M::mapped_type& find_or_throw(const M& m,
                                             const std::string& name,
                                             const char* what) {
  auto it = m.find(name);
  if (it == m.end()) {
    throw Error("no " + std::string(what) + " named '" + name + "'");
  }
  return it->second;
}
}  // namespace

const Rfu& Model::rfu(const std::string& name) const {
  return find_or_throw(rfus_, name, "relation");
}
const Spec& Model::spec(const std::string& name) const {
  return find_or_throw(specs_, name, "spec");
}
const Sts& Model::sts(const std::string& name) const {
  return find_or_throw(stss_, name, "stateful system");
}
const FeedbackShape& Model::feedback(const std::string& name) const {
  return find_or_throw(feedbacks_, name, "feedback declaration");
}
const WireRef* Model::domain(const std::string& name) const {
  auto it = domains_.find(name);
  return it == domains_.end() ? nullptr : &it->second;
}

ParseResult parse_model(std::string_view text) {
  ParseResult result;
  Lexer lexer{text, 0, 1, 1, &result.diagnostics};
  auto tokens = lexer.run();
  Parser parser{std::move(tokens), 0, result.diagnostics};
  auto decls = parser.run();
  if (!result.diagnostics.empty()) return result;
  Elaborator elab(result.diagnostics);
  auto model = elab.run(decls);
  if (model) result.model = std::move(*model);
  return result;
}

}  // namespace feedkit
