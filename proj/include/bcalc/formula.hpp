#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcalc {

struct FormulaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Component expressions of the fixture files:
//   + - * / ^, sin cos exp, parentheses, numbers, pi and coordinate names.
// Exponents must be constant.
class Formula {
 public:
  Formula() = default;
  Formula(const std::string& text, const std::vector<std::string>& vars);

  const std::string& text() const { return text_; }
  bool is_zero() const { return nodes_.empty() || (nodes_.size() == 1 && nodes_[0].op == Num && nodes_[0].num == 0); }

  // konst(double) builds a T constant.
  template <class T, class K>
  T eval(const std::vector<T>& x, K&& konst) const {
    if (nodes_.empty()) return konst(0.0);
    return eval_node((int)nodes_.size() - 1, x, konst);
  }

 private:
  enum Op { Num, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp };
  struct Node {
    Op op;
    int a = -1, b = -1;
    double num = 0;
  };

  template <class T, class K>
  T eval_node(int i, const std::vector<T>& x, K& konst) const {
    const Node& n = nodes_[i];
    using std::cos, std::exp, std::pow, std::sin;
    switch (n.op) {
      case Num:
        return konst(n.num);
      case Var:
        return x[n.a];
      case Add:
        return eval_node(n.a, x, konst) + eval_node(n.b, x, konst);
      case Sub:
        return eval_node(n.a, x, konst) - eval_node(n.b, x, konst);
      case Mul:
        return eval_node(n.a, x, konst) * eval_node(n.b, x, konst);
      case Div:
        return eval_node(n.a, x, konst) / eval_node(n.b, x, konst);
      case Neg:
        return -eval_node(n.a, x, konst);
      case Pow:
        return pow(eval_node(n.a, x, konst), n.num);
      case Sin:
        return sin(eval_node(n.a, x, konst));
      case Cos:
        return cos(eval_node(n.a, x, konst));
      case Exp:
        return exp(eval_node(n.a, x, konst));
    }
    throw FormulaError("bad node");
  }

  friend class FormulaParser;
  std::string text_;
  std::vector<Node> nodes_;
};

}  // namespace bcalc
