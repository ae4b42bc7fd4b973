#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace bcalc {

// Monomials of total degree <= order in nvars variables, sorted by degree, with
// the multiplication table sorted by the degree of the product.
class JetSpace {
 public:
  JetSpace(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  // number of monomials of degree <= k
  int count(int k) const { return upto_[k]; }
  const std::vector<int>& exponents(int m) const { return mono_[m]; }

  struct Triple {
    int a, b, c;  // mono a * mono b = mono c
  };
  const Triple* mult_begin() const { return mult_.data(); }
  const Triple* mult_end(int k) const { return mult_.data() + mult_upto_[k]; }
  // d/dx_i of monomial m: (target monomial or -1, factor)
  const std::pair<int, int>& deriv(int i, int m) const { return der_[i][m]; }
  int var_index(int i) const { return var_[i]; }

 private:
  int nvars_, order_;
  std::vector<std::vector<int>> mono_;
  std::vector<int> upto_, mult_upto_;
  std::vector<Triple> mult_;
  std::vector<std::vector<std::pair<int, int>>> der_;
  std::vector<int> var_;
};

using JetSpacePtr = std::shared_ptr<const JetSpace>;

// Truncated Taylor polynomial around a point. A jet knows the degree up to
// which it is exact; arithmetic keeps the smaller one, a derivative lowers it
// by one.
class Jet {
 public:
  Jet() = default;
  Jet(JetSpacePtr s, double c, int ord = -1);
  static Jet variable(JetSpacePtr s, int i, double x0, int ord = -1);

  double value() const { return c_.empty() ? 0 : c_[0]; }
  int ord() const { return ord_; }
  const JetSpacePtr& space() const { return s_; }
  std::vector<double>& coeffs() { return c_; }
  const std::vector<double>& coeffs() const { return c_; }

  Jet truncated(int ord) const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double k);
  Jet operator-() const;
  Jet d(int i) const;

 private:
  void clip(int ord);

  JetSpacePtr s_;
  int ord_ = 0;
  std::vector<double> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double k, Jet a);
Jet operator/(const Jet& a, const Jet& b);
// r += k a b; r keeps its own order when it is the smaller one
void fma(Jet& r, double k, const Jet& a, const Jet& b);

Jet inverse(const Jet& a);
Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet pow(const Jet& a, double p);

}  // namespace bcalc
