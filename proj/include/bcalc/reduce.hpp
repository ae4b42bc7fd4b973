#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcalc/expr.hpp"
#include "bcalc/ops.hpp"

namespace bcalc {

enum class Verdict { Equal, NotEqual, Undecided };
const char* verdict_name(Verdict v);

struct ReduceOptions {
  size_t max_monomials = 400000;
  size_t max_relations = 2000000;
};

// Extra generator for on-shell comparisons: a factor of symbol sym whose
// innermost derivative is contracted with slot `slot` equals rhs, a template
// whose free ids 0.. are the remaining slots in order.
struct OnShellRule {
  int sym;
  int slot;
  Expr rhs;
};

// Decides membership in the span of the identities of the algebra:
// reordering of derivatives through the commutators, the cyclic identities of
// W and C, the differential Bianchi identities of W, C and F, the divergence of
// C and, on the Levi-Civita side, the contracted Bianchi identity of P.
// Identity instances are generated from the monomials met during the search,
// so a NotEqual answer means the closure was exhausted without finding a
// combination. Budget exhaustion gives Undecided.
class Reducer {
 public:
  Reducer(Theory th, int d, const GammaTables* tab = nullptr, ReduceOptions opt = {});

  void add_rule(OnShellRule r) { rules_.push_back(std::move(r)); }

  Verdict zero(const Expr& e);
  Verdict equal(const Expr& a, const Expr& b) { return zero(a - b); }

  // Reduction by the relations collected so far, without widening them.
  Expr normal_form(const Expr& e);

  // Whatever is left of e after the last search (canonical, no pivot monomials).
  const Expr& residual() const { return residual_; }
  size_t monomials() const { return monos_.size(); }
  size_t relations() const { return basis_.size(); }

  // Identity instances generated for one canonical monomial.
  std::vector<Expr> relations_for(const Term& m) const;

 private:
  using Row = std::map<int, Rat>;

  int column(const Term& t);
  Row to_row(const Expr& e);
  void reduce_full(Row& r) const;
  void insert(Row r);
  void expand(int col);
  Expr to_expr(const Row& r) const;

  Theory th_;
  int d_;
  const GammaTables* tab_;
  ReduceOptions opt_;
  std::vector<OnShellRule> rules_;
  std::unordered_map<std::string, int> cols_;
  std::vector<Term> monos_;
  std::vector<char> expanded_;
  std::unordered_map<int, Row> basis_;
  size_t next_bfs_ = 0;
  Expr residual_;
};

// One-shot convenience wrappers.
Verdict zero_mod_bianchi(const Expr& e, Theory th, int d, const GammaTables* tab = nullptr);
Verdict equal_mod_bianchi(const Expr& a, const Expr& b, Theory th, int d, const GammaTables* tab = nullptr);

}  // namespace bcalc
