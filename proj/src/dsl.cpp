#include "doctheory/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace doctheory {

const std::vector<std::string>& rule_variables() {
  static const std::vector<std::string> v{"docID", "fValue", "params", "model"};
  return v;
}

namespace {

enum class Tok {
  End,
  Ident,
  Int,
  String,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LAngle,
  RAngle,
  Comma,
  Semi,
  Colon,
  Assign,
  Eq,
  Neq,
  FatArrow,
  Arrow,
  Bar,
  Dot,
  Bang,
  Question,
  Plus,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End:
      return "end of input";
    case Tok::Ident:
      return "identifier";
    case Tok::Int:
      return "integer";
    case Tok::String:
      return "string";
    case Tok::LBrace:
      return "'{'";
    case Tok::RBrace:
      return "'}'";
    case Tok::LParen:
      return "'('";
    case Tok::RParen:
      return "')'";
    case Tok::LAngle:
      return "'<'";
    case Tok::RAngle:
      return "'>'";
    case Tok::Comma:
      return "','";
    case Tok::Semi:
      return "';'";
    case Tok::Colon:
      return "':'";
    case Tok::Assign:
      return "':='";
    case Tok::Eq:
      return "'='";
    case Tok::Neq:
      return "'!='";
    case Tok::FatArrow:
      return "'=>'";
    case Tok::Arrow:
      return "'->'";
    case Tok::Bar:
      return "'|'";
    case Tok::Dot:
      return "'.'";
    case Tok::Bang:
      return "'!'";
    case Tok::Question:
      return "'?'";
    case Tok::Plus:
      return "'+'";
  }
  return "token";
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

struct SyntaxError {
  Diagnostic diag;
};

[[noreturn]] void syntax_error(SourceLoc loc, std::string msg) { throw SyntaxError{Diagnostic{loc, std::move(msg)}}; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = {line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size()) {
          const char d = src_[pos_];
          const bool word = std::isalnum(static_cast<unsigned char>(d)) || d == '_';
          // skip-queue style names; `a->b` stays three tokens.
          const bool dash = d == '-' && pos_ + 1 < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]));
          if (!word && !dash) break;
          t.text += d;
          advance();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Int;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          t.text += src_[pos_];
          advance();
        }
      } else if (c == '"') {
        t.kind = Tok::String;
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
          t.text += src_[pos_];
          advance();
        }
        if (pos_ >= src_.size() || src_[pos_] != '"') syntax_error(t.loc, "unterminated string literal");
        advance();
      } else if (starts_with("\xE2\x9F\xA8")) {  // ⟨
        t.kind = Tok::LAngle;
        advance(3);
      } else if (starts_with("\xE2\x9F\xA9")) {  // ⟩
        t.kind = Tok::RAngle;
        advance(3);
      } else {
        t.kind = punct(t.loc);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      const unsigned char c = static_cast<unsigned char>(src_[pos_++]);
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((c & 0xC0) != 0x80) {
        ++col_;  // columns count code points, not bytes
      }
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || starts_with("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Tok punct(SourceLoc loc) {
    const char c = src_[pos_];
    const char n = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    auto two = [&](Tok t) {
      advance(2);
      return t;
    };
    auto one = [&](Tok t) {
      advance();
      return t;
    };
    switch (c) {
      case '{':
        return one(Tok::LBrace);
      case '}':
        return one(Tok::RBrace);
      case '(':
        return one(Tok::LParen);
      case ')':
        return one(Tok::RParen);
      case '<':
        return one(Tok::LAngle);
      case '>':
        return one(Tok::RAngle);
      case ',':
        return one(Tok::Comma);
      case ';':
        return one(Tok::Semi);
      case ':':
        return n == '=' ? two(Tok::Assign) : one(Tok::Colon);
      case '=':
        return n == '>' ? two(Tok::FatArrow) : one(Tok::Eq);
      case '!':
        return n == '=' ? two(Tok::Neq) : one(Tok::Bang);
      case '-':
        if (n == '>') return two(Tok::Arrow);
        break;
      case '|':
        return one(Tok::Bar);
      case '.':
        return one(Tok::Dot);
      case '?':
        return one(Tok::Question);
      case '+':
        return one(Tok::Plus);
      default:
        break;
    }
    syntax_error(loc, std::string("unexpected character '") + c + "'");
  }
};

class Parser {
 public:
  Parser(std::string_view src, NumericConfig cfg) : toks_(Lexer(src).run()), cfg_(cfg) {}

  void bind(const std::string& v) { vars_.push_back(v); }
  void constants_only() { constants_only_ = true; }

  Theory theory() {
    Theory th;
    expect_keyword("theory");
    th.name = ident("theory name");
    expect(Tok::LBrace);
    while (!at(Tok::RBrace)) section(th);
    expect(Tok::RBrace);
    expect(Tok::End);
    return th;
  }

  Term whole_term() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

  Formula whole_formula() {
    Formula f = formula();
    expect(Tok::End);
    return f;
  }

  /// Constants separated by optional semicolons, front to back.
  Value value_sequence() {
    Value out;
    while (!at(Tok::End)) {
      const SourceLoc start = loc();
      Term t = term();
      const auto* c = std::get_if<term::Const>(&t.node);
      if (c == nullptr) syntax_error(start, "expected a constant value, found the term " + to_string(t));
      out = out.cons(c->value);
      accept(Tok::Semi);
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  NumericConfig cfg_;
  std::vector<std::string> vars_;
  bool constants_only_ = false;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_keyword(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  SourceLoc loc() const { return peek().loc; }

  std::string describe(const Token& t) const {
    if (t.kind == Tok::Ident) return "'" + t.text + "'";
    if (t.kind == Tok::Int) return "integer " + t.text;
    return tok_name(t.kind);
  }

  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  Token expect(Tok k) {
    if (!at(k)) syntax_error(loc(), std::string("expected ") + tok_name(k) + ", found " + describe(peek()));
    return take();
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  bool accept_keyword(std::string_view w) {
    if (!at_keyword(w)) return false;
    take();
    return true;
  }

  void expect_keyword(std::string_view w) {
    if (!at_keyword(w)) syntax_error(loc(), "expected '" + std::string(w) + "', found " + describe(peek()));
    take();
  }

  std::string ident(const char* what) {
    if (!at(Tok::Ident)) syntax_error(loc(), std::string("expected ") + what + ", found " + describe(peek()));
    return take().text;
  }

  std::size_t integer() {
    const Token t = expect(Tok::Int);
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) syntax_error(t.loc, "integer out of range");
    return v;
  }

  bool is_var(const std::string& name) const {
    if (constants_only_) return false;
    const auto& rv = rule_variables();
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end() ||
           std::find(rv.begin(), rv.end(), name) != rv.end();
  }

  class Scoped {
   public:
    Scoped(Parser& p, std::string v) : p_(p) { p_.vars_.push_back(std::move(v)); }
    ~Scoped() { p_.vars_.pop_back(); }
    Scoped(const Scoped&) = delete;
    Scoped& operator=(const Scoped&) = delete;

   private:
    Parser& p_;
  };

  // ------------------------------------------------------------------ terms

  Term term() {
    const SourceLoc start = loc();
    if (accept(Tok::LAngle)) {
      std::vector<Term> items;
      if (!at(Tok::RAngle)) {
        do {
          items.push_back(term());
        } while (accept(Tok::Comma));
      }
      expect(Tok::RAngle);
      return make_list(std::move(items));
    }
    if (!at(Tok::Ident)) syntax_error(start, "expected a term, found " + describe(peek()));
    const std::string name = take().text;
    const bool call = at(Tok::LParen);
    if (name == "nat" && call) {
      take();
      const std::size_t n = integer();
      expect(Tok::RParen);
      return make_const(Value::nat(n));
    }
    if (name == "real" && call) {
      take();
      const Token s = expect(Tok::String);
      expect(Tok::RParen);
      auto v = encode_real(s.text, cfg_);
      if (!v) syntax_error(s.loc, v.error().message);
      return make_const(*v);
    }
    if (name == "cond" && at(Tok::LBrace)) return cond();
    if (name == "bsearch" && call) return bsearch();
    if (name == "rec" && call) return rec();
    if (call) {
      const FnInfo* fn = find_fn(name);
      if (fn == nullptr) syntax_error(start, "unknown function '" + name + "'");
      take();
      std::vector<Term> args;
      if (!at(Tok::RParen)) {
        do {
          args.push_back(term());
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen);
      if (static_cast<int>(args.size()) != fn->arity) {
        syntax_error(start, "'" + name + "' takes " + std::to_string(fn->arity) + " argument(s), got " +
                                std::to_string(args.size()));
      }
      return make_call(fn->fn, std::move(args));
    }
    if (is_var(name)) return make_var(name);
    return make_const(Value::atom(name));
  }

  Term cond() {
    expect(Tok::LBrace);
    std::vector<std::pair<Formula, Term>> branches;
    for (;;) {
      if (accept_keyword("else")) {
        expect(Tok::FatArrow);
        Term otherwise = term();
        accept(Tok::Semi);
        expect(Tok::RBrace);
        return make_cond(std::move(branches), std::move(otherwise));
      }
      Formula g = formula();
      expect(Tok::FatArrow);
      Term v = term();
      expect(Tok::Semi);
      branches.emplace_back(std::move(g), std::move(v));
    }
  }

  Term bsearch() {
    expect(Tok::LParen);
    const std::string var = ident("bound variable");
    expect_keyword("in");
    Term over = term();
    expect(Tok::Bar);
    Scoped s(*this, var);
    Formula cond = formula();
    expect(Tok::RParen);
    return make_bsearch(var, std::move(over), std::move(cond));
  }

  Term rec() {
    expect(Tok::LParen);
    Term base = term();
    expect(Tok::Comma);
    Term over = term();
    expect(Tok::Comma);
    const std::string acc = ident("accumulator variable");
    expect(Tok::Comma);
    const std::string elem = ident("element variable");
    expect(Tok::FatArrow);
    Scoped a(*this, acc);
    Scoped e(*this, elem);
    Term step = term();
    expect(Tok::RParen);
    return make_rec(std::move(base), std::move(over), acc, elem, std::move(step));
  }

  // --------------------------------------------------------------- formulas

  Formula formula() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return make_implies(std::move(lhs), formula());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept_keyword("or")) f = make_or(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept_keyword("and")) f = make_and(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept_keyword("not")) return make_not(unary());
    return primary();
  }

  Cardinality cardinality() {
    if (accept(Tok::Question)) return Cardinality::AtMostOne;
    if (accept(Tok::Bang)) return Cardinality::ExactlyOne;
    if (accept(Tok::Plus)) return Cardinality::AtLeastOne;
    if (accept_keyword("empty")) return Cardinality::Empty;
    syntax_error(loc(), "expected a cardinality (empty, ?, !, +), found " + describe(peek()));
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen);
      return f;
    }
    if (at(Tok::Ident)) {
      const std::string& w = peek().text;
      const bool call = peek(1).kind == Tok::LParen;
      if (w == "true" || w == "false") {
        take();
        return make_truth(w == "true");
      }
      if ((w == "forall" || w == "exists") && peek(1).kind == Tok::Ident) {
        const Quantifier q = take().text == "forall" ? Quantifier::Forall : Quantifier::Exists;
        const std::string var = ident("bound variable");
        BoundKind bound;
        if (accept_keyword("in")) {
          bound = BoundKind::Member;
        } else if (accept_keyword("prefix")) {
          bound = BoundKind::Prefix;
        } else {
          syntax_error(loc(), "expected 'in' or 'prefix' after quantified variable");
        }
        Term over = term();
        expect(Tok::Colon);
        expect(Tok::LParen);
        Scoped s(*this, var);
        Formula body = formula();
        expect(Tok::RParen);
        return make_bounded(q, var, bound, std::move(over), std::move(body));
      }
      if (call && (w == "is_nat" || w == "is_real" || w == "is_field" || w == "card")) {
        const std::string name = take().text;
        take();
        Term arg = term();
        if (name == "card") {
          expect(Tok::Comma);
          const Cardinality c = cardinality();
          expect(Tok::RParen);
          return make_pred(PredKind::Card, std::move(arg), c);
        }
        expect(Tok::RParen);
        const PredKind k = name == "is_nat" ? PredKind::Nat : name == "is_real" ? PredKind::Real : PredKind::Field;
        return make_pred(k, std::move(arg));
      }
    }
    Term lhs = term();
    if (accept(Tok::Eq)) return make_cmp(CmpOp::Eq, std::move(lhs), term());
    if (accept(Tok::Neq)) return make_not(make_cmp(CmpOp::Eq, std::move(lhs), term()));
    if (accept(Tok::LAngle)) return make_cmp(CmpOp::Less, std::move(lhs), term());
    if (accept_keyword("in")) return make_cmp(CmpOp::Member, std::move(lhs), term());
    if (accept_keyword("prefix")) return make_cmp(CmpOp::Prefix, std::move(lhs), term());
    syntax_error(loc(), "expected a comparison ('=', '!=', '<', 'in', 'prefix'), found " + describe(peek()));
  }

  // ----------------------------------------------------------------- theory

  Value constant() {
    const SourceLoc at_loc = loc();
    Term t = term();
    const auto* c = std::get_if<term::Const>(&t.node);
    if (c == nullptr) syntax_error(at_loc, "expected a constant value, found the term " + to_string(t));
    return c->value;
  }

  void section(Theory& th) {
    const SourceLoc start = loc();
    const std::string w = ident("a section keyword");
    if (w == "precision") {
      expect_keyword("k");
      expect(Tok::Eq);
      th.precision.integer_digits = static_cast<int>(integer());
      expect_keyword("m");
      expect(Tok::Eq);
      th.precision.fractional_digits = static_cast<int>(integer());
      expect(Tok::Semi);
      cfg_ = th.precision;
      if (!cfg_.valid()) syntax_error(start, "precision needs k + m >= 1");
    } else if (w == "fields") {
      expect(Tok::LBrace);
      while (!accept(Tok::RBrace)) {
        FieldDecl f;
        f.name = ident("field name");
        expect(Tok::Colon);
        f.card = cardinality();
        expect(Tok::Semi);
        th.fields.push_back(std::move(f));
      }
    } else if (w == "forms") {
      expect(Tok::LBrace);
      while (!accept(Tok::RBrace)) {
        FormDecl f;
        f.loc = loc();
        f.name = ident("form name");
        expect(Tok::LBrace);
        while (!accept(Tok::RBrace)) {
          BlankField b;
          b.field = ident("field name");
          expect(Tok::Eq);
          b.default_value = constant();
          expect(Tok::Semi);
          f.blank.push_back(std::move(b));
        }
        th.forms.push_back(std::move(f));
      }
    } else if (w == "transactions") {
      expect(Tok::LBrace);
      while (!accept(Tok::RBrace)) {
        th.transactions.push_back(ident("transaction name"));
        expect(Tok::Semi);
      }
    } else if (w == "filters") {
      expect(Tok::LBrace);
      while (!accept(Tok::RBrace)) {
        FilterDef f;
        f.loc = loc();
        f.name = ident("filter name");
        expect(Tok::LParen);
        f.var = ident("filter variable");
        expect(Tok::RParen);
        expect_keyword("where");
        Scoped s(*this, f.var);
        f.condition = formula();
        expect(Tok::Semi);
        th.filters.push_back(std::move(f));
      }
    } else if (w == "on") {
      DaemonRule r = rule(start);
      (r.kind == DaemonKind::SetField ? th.set_rules : th.trans_rules).push_back(std::move(r));
    } else if (w == "default") {
      const std::string kind = ident("'set' or 'trans'");
      if (kind != "set" && kind != "trans") syntax_error(start, "expected 'default set' or 'default trans'");
      const SourceLoc vloc = loc();
      const std::string v = ident("'skip-queue' or 'keep-queue'");
      DefaultBranch b;
      if (v == "skip-queue") {
        b = DefaultBranch::SkipQueue;
      } else if (v == "keep-queue") {
        b = DefaultBranch::KeepQueue;
      } else {
        syntax_error(vloc, "expected 'skip-queue' or 'keep-queue', found '" + v + "'");
      }
      (kind == "set" ? th.set_default : th.trans_default) = b;
      expect(Tok::Semi);
    } else {
      syntax_error(start, "unknown section '" + w + "' (expected precision, fields, forms, transactions, "
                          "filters, on or default)");
    }
  }

  DaemonRule rule(SourceLoc start) {
    DaemonRule r;
    r.loc = start;
    const std::string kind = ident("'set' or 'trans'");
    if (kind == "set") {
      r.kind = DaemonKind::SetField;
    } else if (kind == "trans") {
      r.kind = DaemonKind::ExecTrans;
    } else {
      syntax_error(start, "expected 'on set' or 'on trans'");
    }
    r.form = ident("form name");
    expect(Tok::Dot);
    r.trigger = ident(r.kind == DaemonKind::SetField ? "field name" : "transaction name");
    if (r.kind == DaemonKind::ExecTrans && accept(Tok::LParen)) {
      expect_keyword("params");
      expect(Tok::RParen);
    }
    if (accept_keyword("when")) r.guard = formula();
    expect_keyword("emit");
    if (accept_keyword("skip-queue")) {
      r.clears_queue = true;
      expect(Tok::Semi);
      return r;
    }
    expect(Tok::LBrace);
    while (!accept(Tok::RBrace)) r.extension.push_back(instruction());
    accept(Tok::Semi);
    return r;
  }

  InstructionTerm instruction() {
    const SourceLoc start = loc();
    const std::string w = ident("an instruction (set, create, trans, for)");
    if (w == "set") {
      instr::SetField s;
      s.field = ident("field name");
      if (accept_keyword("of")) s.target = term();
      expect(Tok::Assign);
      s.value = term();
      expect(Tok::Semi);
      return s;
    }
    if (w == "create") {
      instr::Create c{ident("form name")};
      expect(Tok::Semi);
      return c;
    }
    if (w == "trans") {
      instr::Transaction t;
      t.name = ident("transaction name");
      expect(Tok::LParen);
      t.target = term();
      expect(Tok::Comma);
      t.params = term();
      expect(Tok::RParen);
      expect(Tok::Semi);
      return t;
    }
    if (w == "for") {
      instr::FilterLoop l;
      const std::string var = ident("loop variable");
      expect_keyword("in");
      expect_keyword("filter");
      l.filter = ident("filter name");
      expect(Tok::LParen);
      l.form = ident("form name");
      expect(Tok::Comma);
      l.filter_params = term();
      expect(Tok::RParen);
      expect(Tok::LBrace);
      const SourceLoc body_loc = loc();
      const std::string b = ident("'trans' or 'create'");
      if (b == "trans") {
        instr::FilterLoop::EmitTrans e;
        e.name = ident("transaction name");
        expect(Tok::LParen);
        const Token v = expect(Tok::Ident);
        if (v.text != var) syntax_error(v.loc, "loop body must target the loop variable '" + var + "'");
        expect(Tok::Comma);
        Scoped s(*this, var);
        e.params = term();
        expect(Tok::RParen);
        l.body = std::move(e);
      } else if (b == "create") {
        l.body = instr::FilterLoop::EmitCreate{ident("form name")};
      } else {
        syntax_error(body_loc, "loop body must be 'trans' or 'create'");
      }
      expect(Tok::Semi);
      expect(Tok::RBrace);
      accept(Tok::Semi);
      return l;
    }
    syntax_error(start, "unknown instruction '" + w + "' (expected set, create, trans or for)");
  }
};

// ------------------------------------------------------------------ printer

std::string indent(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

void print_instruction(const InstructionTerm& it, std::string& out) {
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, instr::SetField>) {
          out += "set " + s.field;
          if (s.target) out += " of " + to_string(*s.target);
          out += " := " + to_string(s.value) + ";";
        } else if constexpr (std::is_same_v<S, instr::Create>) {
          out += "create " + s.form + ";";
        } else if constexpr (std::is_same_v<S, instr::Transaction>) {
          out += "trans " + s.name + "(" + to_string(s.target) + ", " + to_string(s.params) + ");";
        } else {
          out += "for id in filter " + s.filter + "(" + s.form + ", " + to_string(s.filter_params) + ") { ";
          if (const auto* t = std::get_if<instr::FilterLoop::EmitTrans>(&s.body)) {
            out += "trans " + t->name + "(id, " + to_string(t->params) + ");";
          } else {
            out += "create " + std::get<instr::FilterLoop::EmitCreate>(s.body).form + ";";
          }
          out += " }";
        }
      },
      it);
}

void print_rule(const DaemonRule& r, std::string& out) {
  out += indent(1) + "on " + (r.kind == DaemonKind::SetField ? "set " : "trans ") + r.form + "." + r.trigger;
  if (r.guard != make_truth(true)) out += " when " + to_string(r.guard);
  if (r.clears_queue) {
    out += " emit skip-queue;\n";
    return;
  }
  if (r.extension.empty()) {
    out += " emit {}\n";
    return;
  }
  out += " emit {\n";
  for (const auto& it : r.extension) {
    out += indent(2);
    print_instruction(it, out);
    out += "\n";
  }
  out += indent(1) + "}\n";
}

}  // namespace

Result<Theory, std::vector<Diagnostic>> parse_theory(std::string_view text, ParseOptions options) {
  Theory th;
  try {
    Parser p(text, NumericConfig{});
    th = p.theory();
  } catch (const SyntaxError& e) {
    return std::vector<Diagnostic>{e.diag};
  }
  if (options.validate) {
    auto diags = validate_theory(th);
    if (!diags.empty()) return diags;
  }
  return th;
}

std::string print_theory(const Theory& th) {
  std::string out = "theory " + th.name + " {\n";
  out += indent(1) + "precision k=" + std::to_string(th.precision.integer_digits) +
         " m=" + std::to_string(th.precision.fractional_digits) + ";\n";
  out += indent(1) + "fields {";
  for (const auto& f : th.fields) out += " " + f.name + ": " + to_string(f.card) + ";";
  out += th.fields.empty() ? "}\n" : " }\n";
  out += indent(1) + "forms {\n";
  for (const auto& f : th.forms) {
    out += indent(2) + f.name + " {";
    for (const auto& b : f.blank) out += " " + b.field + " = " + to_string(b.default_value, {.nat_sugar = true}) + ";";
    out += f.blank.empty() ? "}\n" : " }\n";
  }
  out += indent(1) + "}\n";
  out += indent(1) + "transactions {";
  for (const auto& t : th.transactions) out += " " + t + ";";
  out += th.transactions.empty() ? "}\n" : " }\n";
  out += indent(1) + "filters {\n";
  for (const auto& f : th.filters) {
    out += indent(2) + f.name + "(" + f.var + ") where " + to_string(f.condition) + ";\n";
  }
  out += indent(1) + "}\n";
  for (const auto& r : th.set_rules) print_rule(r, out);
  for (const auto& r : th.trans_rules) print_rule(r, out);
  if (th.set_default == DefaultBranch::SkipQueue) out += indent(1) + "default set skip-queue;\n";
  if (th.trans_default == DefaultBranch::SkipQueue) out += indent(1) + "default trans skip-queue;\n";
  out += "}\n";
  return out;
}

Result<Value, Diagnostic> parse_value(std::string_view text, const NumericConfig& cfg) {
  Term t;
  try {
    Parser p(text, cfg);
    p.constants_only();
    t = p.whole_term();
  } catch (const SyntaxError& e) {
    return e.diag;
  }
  const auto* c = std::get_if<term::Const>(&t.node);
  if (c == nullptr) return Diagnostic{{1, 1}, "expected a constant value, found the term " + to_string(t)};
  return c->value;
}

Result<Term, Diagnostic> parse_term(std::string_view text, const std::vector<std::string>& vars,
                                    const NumericConfig& cfg) {
  try {
    Parser p(text, cfg);
    for (const auto& v : vars) p.bind(v);
    return p.whole_term();
  } catch (const SyntaxError& e) {
    return e.diag;
  }
}

Result<Formula, Diagnostic> parse_formula(std::string_view text, const std::vector<std::string>& vars,
                                          const NumericConfig& cfg) {
  try {
    Parser p(text, cfg);
    for (const auto& v : vars) p.bind(v);
    return p.whole_formula();
  } catch (const SyntaxError& e) {
    return e.diag;
  }
}

Result<Value, Diagnostic> parse_value_sequence(std::string_view text, const NumericConfig& cfg) {
  try {
    Parser p(text, cfg);
    p.constants_only();
    return p.value_sequence();
  } catch (const SyntaxError& e) {
    return e.diag;
  }
}

std::string print_value_lines(const Value& list) {
  std::string out;
  for (const auto& e : list.elements()) out += to_string(e, {.nat_sugar = true}) + "\n";
  return out;
}

}  // namespace doctheory
