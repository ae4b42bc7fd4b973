#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bcalc {

using Rat = mpq_class;

inline Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

enum class Theory { Boundary, Spacetime };

// Boundary symbols first, then the Levi-Civita side.
enum Sym : uint8_t {
  G,    // metric; mixed variance prints as a delta
  W,    // hat W
  C,    // hat C
  TT,   // calligraphic T (subleading gravity datum)
  F,    // hat F
  JJ,   // calligraphic J (subleading gauge datum)
  PHI,  // hat phi
  PSI,  // subleading scalar datum
  SW,   // Weyl tensor of g
  SP,   // Schouten tensor of g
  SF,   // field strength
  SJ,   // bold J
  ST,   // bold T
  SPHI,
  SPSI,
  LAM,  // Weyl parameter
  NSYM
};

struct Idx {
  int16_t id = 0;
  bool up = false;
  bool operator==(const Idx&) const = default;
};

constexpr int kDummyBase = 1000;
inline bool is_dummy(int id) { return id >= kDummyBase; }

constexpr int kMaxIdx = 20;

// Derivative indices come first (outermost derivative first), then the slots.
struct Factor {
  uint8_t sym = 0;
  uint8_t nder = 0;
  uint8_t n = 0;
  std::array<Idx, kMaxIdx> ix{};

  int nslots() const { return n - nder; }
  Idx& slot(int k) { return ix[nder + k]; }
  const Idx& slot(int k) const { return ix[nder + k]; }
  bool operator==(const Factor& o) const;
};

Factor make_factor(Sym s, std::initializer_list<Idx> slots);
Factor make_factor(Sym s, const std::vector<Idx>& slots);

// Commuting factors in fac, Lie-algebra-valued factors as an ordered word.
struct Term {
  Rat c = 1;
  int lam = 0;
  std::vector<Factor> fac;
  std::vector<Factor> word;
};

using Expr = std::vector<Term>;

struct SymInfo {
  std::string_view name;     // unique name used in JSON
  std::string_view alias;    // short name used in text input/output
  std::string_view latex;
  Theory theory;
  int nslots;
  bool lie;
  // slot symmetry group: permutations (new slot k takes old slot perm[k]) with signs
  std::vector<std::pair<std::vector<int>, int>> group;
  std::vector<std::pair<int, int>> traceless;
  std::vector<int> orbit;
};

const SymInfo& sym_info(int s);
// Text lookup: the alias within the theory first, then the unique name.
int sym_by_name(std::string_view name, Theory th);
int sym_by_unique_name(std::string_view name);

// Dimension of the boundary, conformal weight of the scalar datum.
struct Ctx {
  int d = 4;
  Rat w = 1;
  int D() const { return d + 1; }
  int nstar() const;  // 2w + d, must be an integer
};

Rat base_weight(int sym, const Ctx& ctx);
// Sum over factors of base weight minus 2 per upper index; null for mixed weights.
Rat weight_of_term(const Term& t, const Ctx& ctx);

// Weight of a whole expression. The zero expression is homogeneous of every
// weight and is flagged instead; otherwise value is the weight of the first
// term and offending lists the terms that disagree.
struct Weight {
  bool zero = false;
  Rat value = 0;
  std::vector<size_t> offending;
  bool homogeneous() const { return offending.empty(); }
};
Weight weight_of(const Expr& e, const Ctx& ctx);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Rat& r, const Expr& a);
Expr lam_times(int k, const Expr& a);
void append(Expr& a, const Expr& b);
void append_scaled(Expr& a, const Expr& b, const Rat& r);

// Concatenates factors; caller guarantees the index ids are consistent.
Term mul_raw(const Term& a, const Term& b);
// Renames the dummies of b away from a; repeated free ids become contractions.
Term mul(const Term& a, const Term& b);
Expr mul(const Expr& a, const Expr& b);
Expr mul_raw(const Expr& a, const Expr& b);

int max_id(const Term& t);
int max_id(const Expr& e);
int max_dummy(const Term& t);
int max_dummy(const Expr& e);
// Shift dummy ids to start at base.
void shift_dummies(Term& t, int base);
// Turn every id occurring twice into a fresh dummy.
void mark_contractions(Term& t);

// Replace free id k (template) by targets[k]; dummies shifted above base.
Expr instantiate(const Expr& tmpl, const std::vector<Idx>& targets, int base);

std::vector<int> free_ids(const Term& t);

Expr scalar(const Rat& r, int lam = 0);
Expr single(const Factor& f, const Rat& c = 1, int lam = 0);

template <class F>
void for_each_index(Term& t, F&& fn) {
  for (auto& f : t.fac)
    for (int i = 0; i < f.n; ++i) fn(f.ix[i]);
  for (auto& f : t.word)
    for (int i = 0; i < f.n; ++i) fn(f.ix[i]);
}
template <class F>
void for_each_index(const Term& t, F&& fn) {
  for (const auto& f : t.fac)
    for (int i = 0; i < f.n; ++i) fn(f.ix[i]);
  for (const auto& f : t.word)
    for (int i = 0; i < f.n; ++i) fn(f.ix[i]);
}

}  // namespace bcalc
