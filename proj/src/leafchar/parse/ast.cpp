#include "leafchar/parse/ast.hpp"

#include <cctype>

#include "leafchar/error.hpp"

namespace leafchar {

namespace {

AstPtr make(Ast::Kind kind, std::vector<AstPtr> args = {}, std::string name = {}, Rational value = 0) {
  auto a = std::make_shared<Ast>();
  a->kind = kind;
  a->args = std::move(args);
  a->name = std::move(name);
  a->value = std::move(value);
  return a;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  AstPtr parse() {
    AstPtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  AstPtr expr() {
    AstPtr left = term();
    for (;;) {
      if (accept('+'))
        left = make(Ast::Kind::Add, {left, term()});
      else if (accept('-'))
        left = make(Ast::Kind::Sub, {left, term()});
      else
        return left;
    }
  }

  AstPtr term() {
    AstPtr left = unary();
    for (;;) {
      if (accept('*'))
        left = make(Ast::Kind::Mul, {left, unary()});
      else if (accept('/'))
        left = make(Ast::Kind::Div, {left, unary()});
      else
        return left;
    }
  }

  AstPtr unary() {
    if (accept('-')) return make(Ast::Kind::Neg, {unary()});
    return power();
  }

  AstPtr power() {
    AstPtr base = primary();
    if (accept('^')) return make(Ast::Kind::Pow, {base, unary()});
    return base;
  }

  AstPtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      AstPtr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (accept('(')) {
        AstPtr arg = expr();
        if (!accept(')')) fail("expected ')' after argument of " + name);
        return make(Ast::Kind::Call, {arg}, name);
      }
      return make(Ast::Kind::Symbol, {}, name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  AstPtr number() {
    std::size_t start = pos_;
    std::string digits;
    std::size_t frac = 0;
    bool dot = false;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      if (s_[pos_] == '.') {
        if (dot) fail("malformed number");
        dot = true;
      } else {
        digits += s_[pos_];
        if (dot) ++frac;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    Integer num(digits, 10);
    Integer den = 1;
    for (std::size_t i = 0; i < frac; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return make(Ast::Kind::Number, {}, {}, q);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

const char* op_text(Ast::Kind k) {
  switch (k) {
    case Ast::Kind::Add: return " + ";
    case Ast::Kind::Sub: return " - ";
    case Ast::Kind::Mul: return "*";
    case Ast::Kind::Div: return "/";
    case Ast::Kind::Pow: return "^";
    default: return "";
  }
}

}  // namespace

std::string Ast::to_string() const {
  switch (kind) {
    case Kind::Number: return value.get_str();
    case Kind::Symbol: return name;
    case Kind::Neg: return "-(" + args[0]->to_string() + ")";
    case Kind::Call: return name + "(" + args[0]->to_string() + ")";
    default: return "(" + args[0]->to_string() + op_text(kind) + args[1]->to_string() + ")";
  }
}

AstPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

Expr to_expr(const Ast& ast, const ContextPtr& ctx, const std::vector<TrigPair>& trig) {
  auto rec = [&](const Ast& a) { return to_expr(a, ctx, trig); };
  switch (ast.kind) {
    case Ast::Kind::Number: return Expr(ast.value);
    case Ast::Kind::Symbol: return Expr::symbol(ctx, ast.name);
    case Ast::Kind::Neg: return -rec(*ast.args[0]);
    case Ast::Kind::Add: return rec(*ast.args[0]) + rec(*ast.args[1]);
    case Ast::Kind::Sub: return rec(*ast.args[0]) - rec(*ast.args[1]);
    case Ast::Kind::Mul: return rec(*ast.args[0]) * rec(*ast.args[1]);
    case Ast::Kind::Div: return rec(*ast.args[0]) / rec(*ast.args[1]);
    case Ast::Kind::Pow: {
      Expr e = rec(*ast.args[1]);
      if (!e.is_constant() || e.constant_value().get_den() != 1 || !e.constant_value().get_num().fits_sint_p())
        throw Error(ErrorCode::InvalidArgument, "exponent must be an integer constant: " + ast.args[1]->to_string());
      return rec(*ast.args[0]).pow(static_cast<int>(e.constant_value().get_num().get_si()));
    }
    case Ast::Kind::Call: {
      Expr arg = rec(*ast.args[0]);
      if (ast.name == "sin" || ast.name == "cos") {
        for (const auto& p : trig)
          if (expr_equal(arg, p.argument)) return Expr::symbol(ctx, ast.name == "sin" ? p.sin_name : p.cos_name);
        throw Error(ErrorCode::InvalidArgument, ast.name + " of " + ast.args[0]->to_string() + " has no symbol");
      }
      for (const auto& chain : ctx->chains())
        if (chain.name == ast.name) {
          if (!expr_equal(arg, Expr::symbol(ctx, chain.base)))
            throw Error(ErrorCode::InvalidArgument, "chain " + chain.name + " applied off its base variable");
          return Expr::symbol(ctx, chain.symbols.at(0));
        }
      throw Error(ErrorCode::InvalidArgument, "function " + ast.name + " is not representable exactly");
    }
  }
  throw Error(ErrorCode::InvalidArgument, "bad expression node");
}

}  // namespace leafchar
