#include "ptshock/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace ptshock {

namespace {

ExprPtr make(Expr::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto e = std::make_shared<Expr>(k);
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ExprPtr make_number(double v) {
  auto e = std::make_shared<Expr>(Expr::Kind::number);
  e->number = v;
  return e;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  ExprPtr run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "empty expression");
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError(pos_, "unexpected trailing input");
    return e;
  }

 private:
  const std::string& src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(pos_, std::string("expected ") + what);
  }

  // sum := term (('+'|'-') term)*
  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    for (;;) {
      if (accept('+'))
        e = make(Expr::Kind::add, e, parse_term());
      else if (accept('-'))
        e = make(Expr::Kind::sub, e, parse_term());
      else
        return e;
    }
  }

  // term := unary (('*'|'/') unary)*
  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (accept('*'))
        e = make(Expr::Kind::mul, e, parse_unary());
      else if (accept('/'))
        e = make(Expr::Kind::div, e, parse_unary());
      else
        return e;
    }
  }

  // unary := '-' unary | power   (so -x^2 parses as -(x^2))
  ExprPtr parse_unary() {
    if (accept('-')) return make(Expr::Kind::neg, parse_unary());
    return parse_power();
  }

  // power := atom ('^' unary)?   right-associative
  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept('^')) return make(Expr::Kind::pow, base, parse_unary());
    return base;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "expected operand");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      expect(')', "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(pos_, "unexpected character");
  }

  ExprPtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
      ++pos_;
    // optional exponent: e[+-]digits, only when digits follow
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_ + 1;
      if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
      if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
        pos_ = mark;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    std::string text = src_.substr(start, pos_ - start);
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) throw ParseError(start, "malformed number");
    return make_number(v);
  }

  ExprPtr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    if (name == "x") return make(Expr::Kind::var);
    if (name == "i") return make(Expr::Kind::imag_unit);
    if (name == "pi") return make(Expr::Kind::pi);
    if (name == "exp") {
      expect('(', "'(' after exp");
      ExprPtr arg = parse_sum();
      expect(')', "')'");
      return make(Expr::Kind::exp_fn, arg);
    }
    throw ParseError(start, "unknown identifier '" + name + "'");
  }
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::neg: return 3;
    case Expr::Kind::pow: return 4;
    default: return 5;  // atoms
  }
}

void print_node(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
  bool parens = precedence(child.kind) < min_prec;
  if (parens) out += '(';
  print_node(child, out);
  if (parens) out += ')';
}

void print_node(const Expr& e, std::string& out) {
  char buf[40];
  switch (e.kind) {
    case Expr::Kind::number:
      std::snprintf(buf, sizeof buf, "%.17g", e.number);
      out += buf;
      break;
    case Expr::Kind::imag_unit: out += 'i'; break;
    case Expr::Kind::pi: out += "pi"; break;
    case Expr::Kind::var: out += 'x'; break;
    case Expr::Kind::neg:
      out += '-';
      print_child(*e.lhs, 3, out);
      break;
    case Expr::Kind::add:
      print_child(*e.lhs, 1, out);
      out += " + ";
      print_child(*e.rhs, 2, out);
      break;
    case Expr::Kind::sub:
      print_child(*e.lhs, 1, out);
      out += " - ";
      print_child(*e.rhs, 2, out);
      break;
    case Expr::Kind::mul:
      print_child(*e.lhs, 2, out);
      out += "*";
      print_child(*e.rhs, 3, out);
      break;
    case Expr::Kind::div:
      print_child(*e.lhs, 2, out);
      out += "/";
      print_child(*e.rhs, 3, out);
      break;
    case Expr::Kind::pow:
      print_child(*e.lhs, 5, out);
      out += "^";
      print_child(*e.rhs, 3, out);
      break;
    case Expr::Kind::exp_fn:
      out += "exp(";
      print_node(*e.lhs, out);
      out += ')';
      break;
  }
}

}  // namespace

ProfileAst parse(const std::string& src) {
  if (src.empty()) throw ParseError(0, "empty expression");
  return ProfileAst{Parser(src).run()};
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Expr::Kind::number && a.number != b.number) return false;
  if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
  if (a.lhs && !expr_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !expr_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

std::string ProfileAst::to_string() const {
  std::string out;
  if (root) print_node(*root, out);
  return out;
}

bool ProfileAst::operator==(const ProfileAst& other) const {
  if (!root || !other.root) return bool(root) == bool(other.root);
  return expr_equal(*root, *other.root);
}

}  // namespace ptshock
