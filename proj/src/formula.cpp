#include "bcalc/formula.hpp"

#include <cctype>
#include <numbers>

namespace bcalc {

class FormulaParser {
 public:
  FormulaParser(const std::string& s, const std::vector<std::string>& vars, Formula& f) : s_(s), vars_(vars), f_(f) {}

  void run() {
    expr();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
  }

 private:
  using Node = Formula::Node;

  [[noreturn]] void fail(const std::string& m) const {
    throw FormulaError(m + " at column " + std::to_string(p_ + 1) + " in '" + s_ + "'");
  }
  void skip() {
    while (p_ < s_.size() && std::isspace((unsigned char)s_[p_])) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  int push(Node n) {
    f_.nodes_.push_back(n);
    return (int)f_.nodes_.size() - 1;
  }

  int expr() {
    int l = term();
    while (true) {
      if (eat('+'))
        l = push({Formula::Add, l, term()});
      else if (eat('-'))
        l = push({Formula::Sub, l, term()});
      else
        return l;
    }
  }
  int term() {
    int l = unary();
    while (true) {
      if (eat('*'))
        l = push({Formula::Mul, l, unary()});
      else if (eat('/'))
        l = push({Formula::Div, l, unary()});
      else
        return l;
    }
  }
  int unary() {
    if (eat('-')) return push({Formula::Neg, unary()});
    if (eat('+')) return unary();
    return power();
  }
  int power() {
    int b = atom();
    if (!eat('^')) return b;
    // constant exponent: evaluate the subtree right away
    size_t start = f_.nodes_.size();
    int e = unary();
    for (size_t i = start; i < f_.nodes_.size(); ++i)
      if (f_.nodes_[i].op == Formula::Var) fail("exponent must be constant");
    std::vector<double> none;
    double v = f_.eval_node(e, none, konst_);
    f_.nodes_.resize(start);
    Node n{Formula::Pow, b};
    n.num = v;
    return push(n);
  }
  int atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    char c = s_[p_];
    if (eat('(')) {
      int e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit((unsigned char)c) || c == '.') {
      size_t used = 0;
      double v;
      try {
        v = std::stod(s_.substr(p_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      p_ += used;
      Node n{Formula::Num};
      n.num = v;
      return push(n);
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t q = p_;
      while (q < s_.size() && (std::isalnum((unsigned char)s_[q]) || s_[q] == '_')) ++q;
      std::string name = s_.substr(p_, q - p_);
      p_ = q;
      for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return push({Formula::Var, (int)i});
      if (name == "pi") {
        Node n{Formula::Num};
        n.num = std::numbers::pi;
        return push(n);
      }
      Formula::Op op;
      if (name == "sin")
        op = Formula::Sin;
      else if (name == "cos")
        op = Formula::Cos;
      else if (name == "exp")
        op = Formula::Exp;
      else
        fail("unknown name '" + name + "'");
      if (!eat('(')) fail("expected '(' after " + name);
      int a = expr();
      if (!eat(')')) fail("expected ')'");
      return push({op, a});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  static double konst_(double v) { return v; }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  Formula& f_;
  size_t p_ = 0;
};

Formula::Formula(const std::string& text, const std::vector<std::string>& vars) : text_(text) {
  FormulaParser(text, vars, *this).run();
}

}  // namespace bcalc
