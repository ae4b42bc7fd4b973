#include "bcalc/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bcalc/canon.hpp"

namespace bcalc {

double NumValue::max_abs() const {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double NumValue::residual() const {
  double m = max_abs();
  return scale > 0 ? m / scale : m;
}

Expr abelianize(const Expr& e, int d) {
  Expr out;
  out.reserve(e.size());
  for (auto t : e) {
    for (auto& f : t.word) t.fac.push_back(f);
    t.word.clear();
    out.push_back(std::move(t));
  }
  return canonical(out, d);
}

namespace {

// dense tensor with one label per axis
struct LT {
  std::vector<int> labels;
  std::vector<double> v;
};

int ipow(int n, int r) {
  int p = 1;
  for (int i = 0; i < r; ++i) p *= n;
  return p;
}

void raise(LT& t, int axis, int n, const std::vector<double>& gi) {
  const int r = (int)t.labels.size();
  const int st = ipow(n, r - 1 - axis);
  std::vector<double> out(t.v.size(), 0.0);
  for (size_t I = 0; I < t.v.size(); ++I) {
    int i = (int)(I / st) % n;
    size_t base = I - (size_t)i * st;
    double s = 0;
    for (int j = 0; j < n; ++j) s += gi[i * n + j] * t.v[base + (size_t)j * st];
    out[I] = s;
  }
  t.v = std::move(out);
}

// contract shared labels; repeated labels inside one tensor are traced
LT product(const LT& A, const LT& B, int n) {
  std::vector<int> R, S;
  for (int l : A.labels)
    if (std::find(B.labels.begin(), B.labels.end(), l) == B.labels.end()) R.push_back(l);
    else S.push_back(l);
  for (int l : B.labels)
    if (std::find(A.labels.begin(), A.labels.end(), l) == A.labels.end()) R.push_back(l);
  auto strides = [&](const LT& T, int label) {
    int s = 0;
    const int r = (int)T.labels.size();
    for (int k = 0; k < r; ++k)
      if (T.labels[k] == label) s += ipow(n, r - 1 - k);
    return s;
  };
  std::vector<int> all = R;
  all.insert(all.end(), S.begin(), S.end());
  const int m = (int)all.size();
  std::vector<int> sa(m), sb(m);
  for (int k = 0; k < m; ++k) {
    sa[k] = strides(A, all[k]);
    sb[k] = strides(B, all[k]);
  }
  LT out;
  out.labels = R;
  out.v.assign(ipow(n, (int)R.size()), 0.0);
  const int nS = ipow(n, (int)S.size());
  std::vector<int> idx(m, 0);
  size_t oa = 0, ob = 0;
  for (size_t o = 0; o < out.v.size(); ++o) {
    double s = 0;
    for (int q = 0; q < nS; ++q) {
      s += A.v[oa] * B.v[ob];
      // odometer over all labels, shared ones fastest
      for (int k = m - 1; k >= 0; --k) {
        oa += sa[k];
        ob += sb[k];
        if (++idx[k] < n) break;
        oa -= (size_t)sa[k] * n;
        ob -= (size_t)sb[k] * n;
        idx[k] = 0;
      }
    }
    out.v[o] = s;
  }
  return out;
}

LT scalar_lt(double x) {
  LT t;
  t.v = {x};
  return t;
}

// Factor tensor with up slots raised and self-contractions traced.
LT factor_tensor(const Factor& f, const Geometry& geo, bool absval) {
  const int n = geo.dim();
  LT t;
  t.v = geo.tensor(f.sym, f.nder);
  for (int i = 0; i < f.n; ++i) t.labels.push_back(f.ix[i].id);
  for (int i = 0; i < f.n; ++i)
    if (f.ix[i].up) raise(t, i, n, geo.ginv());
  if (absval)
    for (auto& x : t.v) x = std::abs(x);
  // traces: contract with a scalar, the product traces repeated labels
  bool rep = false;
  for (int i = 0; i < f.n; ++i)
    for (int j = i + 1; j < f.n; ++j) rep |= f.ix[i].id == f.ix[j].id;
  if (!rep) return t;
  // diagonal sum over repeated labels
  std::vector<int> keep;
  for (int l : t.labels)
    if (std::count(t.labels.begin(), t.labels.end(), l) == 1) keep.push_back(l);
  LT out;
  out.labels = keep;
  out.v.assign(ipow(n, (int)keep.size()), 0.0);
  const int r = (int)t.labels.size();
  std::vector<int> idx(r);
  for (size_t I = 0; I < t.v.size(); ++I) {
    size_t rem = I;
    for (int k = r - 1; k >= 0; --k) {
      idx[k] = (int)(rem % n);
      rem /= n;
    }
    bool diag = true;
    for (int a = 0; a < r && diag; ++a)
      for (int b = a + 1; b < r; ++b)
        if (t.labels[a] == t.labels[b] && idx[a] != idx[b]) {
          diag = false;
          break;
        }
    if (!diag) continue;
    size_t o = 0;
    for (int l : keep) {
      int k = (int)(std::find(t.labels.begin(), t.labels.end(), l) - t.labels.begin());
      o = o * n + idx[k];
    }
    out.v[o] += t.v[I];
  }
  return out;
}

LT term_tensor(const Term& t, const Geometry& geo, bool absval) {
  const int n = geo.dim();
  std::vector<LT> parts;
  for (const auto* L : {&t.fac, &t.word})
    for (const auto& f : *L) parts.push_back(factor_tensor(f, geo, absval));
  LT acc = scalar_lt(1);
  // greedy: next factor sharing the most labels with the accumulator
  while (!parts.empty()) {
    size_t best = 0;
    long bs = -1;
    for (size_t i = 0; i < parts.size(); ++i) {
      long shared = 0;
      for (int l : parts[i].labels) shared += std::count(acc.labels.begin(), acc.labels.end(), l);
      long score = shared * 16 - (long)parts[i].labels.size();
      if (score > bs) {
        bs = score;
        best = i;
      }
    }
    acc = product(acc, parts[best], n);
    parts.erase(parts.begin() + best);
  }
  // reorder to increasing labels
  std::vector<int> order(acc.labels.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return acc.labels[a] < acc.labels[b]; });
  LT out;
  for (int k : order) out.labels.push_back(acc.labels[k]);
  out.v.assign(acc.v.size(), 0.0);
  const int r = (int)order.size();
  std::vector<int> idx(r);
  for (size_t I = 0; I < acc.v.size(); ++I) {
    size_t rem = I;
    for (int k = r - 1; k >= 0; --k) {
      idx[k] = (int)(rem % n);
      rem /= n;
    }
    size_t o = 0;
    for (int k : order) o = o * n + idx[k];
    out.v[o] = acc.v[I];
  }
  return out;
}

}  // namespace

NumValue evaluate(const Expr& e, const Geometry& geo, double lambda) {
  NumValue out;
  out.n = geo.dim();
  bool first = true;
  for (const auto& t : e) {
    if (t.word.size() > 1) throw std::invalid_argument("non-abelian word in numeric evaluation");
    std::vector<int> fr = free_ids(t);
    std::sort(fr.begin(), fr.end());
    std::vector<bool> up;
    for (int id : fr) {
      bool u = false;
      for_each_index(t, [&](const Idx& x) {
        if (x.id == id) u = x.up;
      });
      up.push_back(u);
    }
    if (first) {
      out.free = fr;
      out.up = up;
      out.v.assign(ipow(out.n, (int)fr.size()), 0.0);
      first = false;
    } else if (fr != out.free || up != out.up) {
      throw std::invalid_argument("terms with different free indices");
    }
    double c = t.c.get_d() * std::pow(lambda, t.lam);
    LT v = term_tensor(t, geo, false);
    LT a = term_tensor(t, geo, true);
    for (size_t i = 0; i < v.v.size(); ++i) {
      out.v[i] += c * v.v[i];
      out.scale = std::max(out.scale, std::abs(c) * a.v[i]);
    }
  }
  if (first) out.v = {0.0};
  return out;
}

double relative_difference(const NumValue& a, const NumValue& b) {
  if (a.v.size() != b.v.size()) throw std::invalid_argument("comparing tensors of different rank");
  double m = 0, s = std::max(a.max_abs(), b.max_abs());
  for (size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return s > 0 ? m / s : m;
}

}  // namespace bcalc
