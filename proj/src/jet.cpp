#include "bcalc/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bcalc {

JetSpace::JetSpace(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1 || order < 0) throw std::invalid_argument("bad jet space");
  std::vector<int> cur(nvars, 0);
  for (int deg = 0; deg <= order; ++deg) {
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == nvars - 1) {
        cur[pos] = left;
        mono_.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[pos] = k;
        self(self, pos + 1, left - k);
      }
    };
    rec(rec, 0, deg);
    upto_.push_back((int)mono_.size());
  }
  std::map<std::vector<int>, int> idx;
  std::vector<int> deg(mono_.size());
  for (int m = 0; m < (int)mono_.size(); ++m) {
    idx[mono_[m]] = m;
    for (int x : mono_[m]) deg[m] += x;
  }
  std::vector<std::vector<Triple>> by_deg(order + 1);
  std::vector<int> s(nvars);
  for (int a = 0; a < (int)mono_.size(); ++a)
    for (int b = 0; b < (int)mono_.size(); ++b) {
      if (deg[a] + deg[b] > order) continue;
      for (int i = 0; i < nvars; ++i) s[i] = mono_[a][i] + mono_[b][i];
      by_deg[deg[a] + deg[b]].push_back({a, b, idx.at(s)});
    }
  for (auto& v : by_deg) {
    mult_.insert(mult_.end(), v.begin(), v.end());
    mult_upto_.push_back((int)mult_.size());
  }
  der_.assign(nvars, {});
  var_.assign(nvars, -1);
  for (int i = 0; i < nvars; ++i) {
    for (int m = 0; m < (int)mono_.size(); ++m) {
      if (mono_[m][i] == 0) {
        der_[i].push_back({-1, 0});
        continue;
      }
      s = mono_[m];
      s[i]--;
      der_[i].push_back({idx.at(s), mono_[m][i]});
    }
    if (order >= 1) {
      std::fill(s.begin(), s.end(), 0);
      s[i] = 1;
      var_[i] = idx.at(s);
    }
  }
}

Jet::Jet(JetSpacePtr s, double c, int ord) : s_(std::move(s)) {
  ord_ = ord < 0 ? s_->order() : std::min(ord, s_->order());
  c_.assign(s_->count(ord_), 0.0);
  c_[0] = c;
}

Jet Jet::variable(JetSpacePtr s, int i, double x0, int ord) {
  Jet j(std::move(s), x0, ord);
  int v = j.s_->var_index(i);
  if (v >= 0 && j.ord_ >= 1) j.c_[v] = 1;
  return j;
}

void Jet::clip(int ord) {
  if (ord < ord_) {
    ord_ = ord;
    c_.resize(s_->count(ord));
  }
}

Jet Jet::truncated(int ord) const {
  if (ord < 0) throw std::logic_error("jet truncated below degree 0");
  Jet r = *this;
  r.clip(ord);
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  clip(o.ord_);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  clip(o.ord_);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(double k) {
  for (auto& x : c_) x *= k;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r *= -1;
  return r;
}

Jet Jet::d(int i) const {
  if (ord_ < 1) throw std::logic_error("derivative of a jet exact only to degree 0");
  Jet r(s_, 0, ord_ - 1);
  for (size_t m = 0; m < c_.size(); ++m) {
    const auto& [t, k] = s_->deriv(i, (int)m);
    if (t >= 0 && t < (int)r.c_.size()) r.c_[t] += k * c_[m];
  }
  return r;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(double k, Jet a) { return a *= k; }

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(a.space(), 0, std::min(a.ord(), b.ord()));
  fma(r, 1, a, b);
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

void fma(Jet& r, double k, const Jet& a, const Jet& b) {
  int ord = std::min({r.ord(), a.ord(), b.ord()});
  if (ord < r.ord()) r = r.truncated(ord);
  const double* ca = a.coeffs().data();
  const double* cb = b.coeffs().data();
  double* cr = r.coeffs().data();
  const auto* end = a.space()->mult_end(ord);
  for (const auto* t = a.space()->mult_begin(); t != end; ++t) cr[t->c] += k * ca[t->a] * cb[t->b];
}

namespace {

// sum_n coef[n] h^n, h = a - a(0)
Jet series(const Jet& a, const std::vector<double>& coef) {
  Jet h = a;
  h.coeffs()[0] = 0;
  Jet r(a.space(), coef[0], a.ord());
  Jet p(a.space(), 1, a.ord());
  for (int n = 1; n <= a.ord(); ++n) {
    p = p * h;
    Jet t = p;
    t *= coef[n];
    r += t;
  }
  return r;
}

}  // namespace

Jet inverse(const Jet& a) {
  double a0 = a.value();
  if (a0 == 0) throw std::domain_error("division by a quantity vanishing at the point");
  std::vector<double> c(a.ord() + 1);
  for (int n = 0; n <= a.ord(); ++n) c[n] = std::pow(-1.0 / a0, n) / a0;
  return series(a, c);
}

Jet exp(const Jet& a) {
  std::vector<double> c(a.ord() + 1);
  double f = std::exp(a.value());
  for (int n = 0; n <= a.ord(); ++n) {
    c[n] = f;
    f /= (n + 1);
  }
  return series(a, c);
}

namespace {

std::vector<double> trig(double s, double co, int ord, int shift) {
  // Taylor coefficients of sin(x0 + h) (shift 0) or cos (shift 1)
  std::vector<double> c(ord + 1);
  double f = 1;
  for (int n = 0; n <= ord; ++n) {
    int k = (n + shift) % 4;
    double dn = k == 0 ? s : k == 1 ? co : k == 2 ? -s : -co;
    c[n] = dn * f;
    f /= (n + 1);
  }
  return c;
}

}  // namespace

Jet sin(const Jet& a) { return series(a, trig(std::sin(a.value()), std::cos(a.value()), a.ord(), 0)); }
Jet cos(const Jet& a) { return series(a, trig(std::sin(a.value()), std::cos(a.value()), a.ord(), 1)); }

Jet pow(const Jet& a, double p) {
  if (p == std::floor(p) && std::abs(p) <= 64) {
    int n = (int)p;
    Jet base = n < 0 ? inverse(a) : a;
    Jet r(a.space(), 1, a.ord());
    for (int k = 0; k < std::abs(n); ++k) r = r * base;
    return r;
  }
  double a0 = a.value();
  if (a0 <= 0) throw std::domain_error("non-integer power of a non-positive quantity");
  std::vector<double> c(a.ord() + 1);
  double binom = 1;
  for (int n = 0; n <= a.ord(); ++n) {
    c[n] = binom * std::pow(a0, p - n);
    binom *= (p - n) / (n + 1);
  }
  return series(a, c);
}

}  // namespace bcalc
