#include "bcalc/geometry.hpp"

#include <Eigen/Dense>

#include <mutex>
#include <sstream>

namespace bcalc {

std::vector<double> JetTensor::values() const {
  std::vector<double> v(c.size());
  for (size_t i = 0; i < c.size(); ++i) v[i] = c[i].value();
  return v;
}

void add_needs(Needs& need, const Expr& e) {
  for (const auto& t : e)
    for (const auto* L : {&t.fac, &t.word})
      for (const auto& f : *L) {
        auto it = need.find(f.sym);
        if (it == need.end() || it->second < f.nder) need[f.sym] = f.nder;
      }
}

namespace {

JetSpacePtr jet_space(int n, int K) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, JetSpacePtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& s = cache[{n, K}];
  if (!s) s = std::make_shared<const JetSpace>(n, K);
  return s;
}

int ipow(int n, int r) {
  int p = 1;
  for (int i = 0; i < r; ++i) p *= n;
  return p;
}

JetTensor make(const JetSpacePtr& s, int n, int rank, int ord) {
  JetTensor t;
  t.n = n;
  t.rank = rank;
  t.c.assign(ipow(n, rank), Jet(s, 0, ord));
  return t;
}

JetTensor truncated(const JetTensor& t, int ord) {
  JetTensor r = t;
  for (auto& j : r.c) j = j.truncated(std::min(ord, j.ord()));
  return r;
}

std::string where(const std::vector<double>& x0) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x0.size(); ++i) os << (i ? ", " : "") << x0[i];
  os << ")";
  return os.str();
}

}  // namespace

JetTensor Geometry::nabla(const JetTensor& t, const JetTensor& gam) {
  const int n = t.n, r = t.rank;
  const int sz = ipow(n, r);
  int ord = t.c.empty() ? 0 : t.c[0].ord();
  if (ord < 1) throw GeometryError("derivative requested beyond the computed order");
  JetTensor out;
  out.n = n;
  out.rank = r + 1;
  out.c.reserve((size_t)sz * n);
  std::vector<int> stride(r);
  for (int s = 0; s < r; ++s) stride[s] = ipow(n, r - 1 - s);
  for (int a = 0; a < n; ++a)
    for (int I = 0; I < sz; ++I) {
      Jet v = t.c[I].d(a);
      for (int s = 0; s < r; ++s) {
        int is = (I / stride[s]) % n;
        int base = I - is * stride[s];
        for (int e = 0; e < n; ++e) fma(v, -1, gam.c[(e * n + a) * n + is], t.c[base + e * stride[s]]);
      }
      out.c.push_back(std::move(v));
    }
  return out;
}

Geometry::Geometry(const Fixture& fx, const std::vector<double>& x0, const Needs& need) : n_(fx.dim()) {
  const int n = n_;
  if ((int)x0.size() != n) throw GeometryError("sample point of the wrong dimension");
  auto need_of = [&](int s) {
    auto it = need.find(s);
    return it == need.end() ? -1 : it->second;
  };
  int mcurv = std::max(need_of(SW), need_of(SP));
  // g is needed to order: curvature + 2, and the highest derivative of any
  // field (for the Christoffel terms)
  int Kg = mcurv >= 0 ? mcurv + 2 : 0;
  int Kfield = 0;
  for (int s : {SF, SJ, ST, SPHI, SPSI, G}) {
    int m = need_of(s);
    if (m < 0) continue;
    Kg = std::max(Kg, m);
    Kfield = std::max(Kfield, s == SF ? m + 1 : m);
  }
  for (const auto& [s, m] : need)
    if (s != SW && s != SP && s != SF && s != SJ && s != ST && s != SPHI && s != SPSI && s != G)
      throw GeometryError(std::string("no numeric binding for symbol ") + std::string(sym_info(s).name));
  const int K = std::max({Kg, Kfield, 1});
  auto S = jet_space(n, K);

  std::vector<Jet> X;
  for (int i = 0; i < n; ++i) X.push_back(Jet::variable(S, i, x0[i]));
  auto konst = [&](double v) { return Jet(S, v); };

  JetTensor g = make(S, n, 2, K);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Jet v = fx.g[i][j].eval(X, konst);
      g.c[i * n + j] = v;
      g.c[j * n + i] = v;
    }
  g0_ = g.values();

  Eigen::MatrixXd G0(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G0(i, j) = g0_[i * n + j];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G0);
  double scale = G0.cwiseAbs().maxCoeff();
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-10 * std::pow(scale, n))
    throw GeometryError("singular metric at point " + where(x0));
  Eigen::MatrixXd Gi = lu.inverse();

  // g^{-1} = sum_k (-g0^{-1} h)^k g0^{-1}, h = g - g0
  JetTensor gi = make(S, n, 2, K);
  {
    JetTensor M = make(S, n, 2, K);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Jet h = g.c[k * n + j];
          h.coeffs()[0] = 0;
          if (Gi(i, k) != 0) fma(M.c[i * n + j], -Gi(i, k), Jet(S, 1), h);
        }
    JetTensor P = make(S, n, 2, K);  // current power times g0^{-1}
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) P.c[i * n + j] = Jet(S, Gi(i, j));
    gi = P;
    for (int p = 1; p <= K; ++p) {
      JetTensor Q = make(S, n, 2, K);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j) fma(Q.c[i * n + j], 1, M.c[i * n + k], P.c[k * n + j]);
      P = std::move(Q);
      for (size_t q = 0; q < gi.c.size(); ++q) gi.c[q] += P.c[q];
    }
  }
  gi0_ = gi.values();

  // Christoffel symbols, index [k][i][j]
  JetTensor dg = make(S, n, 3, K - 1);
  for (int a = 0; a < n; ++a)
    for (int q = 0; q < n * n; ++q) dg.c[a * n * n + q] = g.c[q].d(a);
  JetTensor gam = make(S, n, 3, K - 1);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet low = dg.c[(i * n + j) * n + l] + dg.c[(j * n + i) * n + l] - dg.c[(l * n + i) * n + j];
        low *= 0.5;
        for (int k = 0; k < n; ++k) fma(gam.c[(k * n + i) * n + j], 1, gi.c[k * n + l], low);
      }
  gam0_ = gam.values();

  auto tower = [&](int sym, JetTensor base, int m) {
    JetTensor cur = truncated(base, m);
    for (int k = 0;; ++k) {
      vals_[{sym, k}] = cur.values();
      if (k == m) break;
      cur = nabla(cur, gam);
    }
  };

  if (mcurv >= 0) {
    if (n < 3) throw GeometryError("Schouten tensor needs dimension >= 3");
    const int o = mcurv;  // order of the curvature jets
    JetTensor gm = truncated(gam, o + 1);
    JetTensor R = make(S, n, 4, o);  // R^a_bcd
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            Jet v = gm.c[(a * n + d) * n + b].d(c) - gm.c[(a * n + c) * n + b].d(d);
            for (int e = 0; e < n; ++e) {
              fma(v, 1, gm.c[(a * n + c) * n + e], gm.c[(e * n + d) * n + b]);
              fma(v, -1, gm.c[(a * n + d) * n + e], gm.c[(e * n + c) * n + b]);
            }
            R.c[((a * n + b) * n + c) * n + d] = v;
            R.c[((a * n + b) * n + d) * n + c] = -v;
          }
    JetTensor gt = truncated(g, o), git = truncated(gi, o);
    JetTensor Rl = make(S, n, 4, o);
    for (int a = 0; a < n; ++a)
      for (int e = 0; e < n; ++e)
        for (int q = 0; q < n * n * n; ++q) fma(Rl.c[a * n * n * n + q], 1, gt.c[a * n + e], R.c[e * n * n * n + q]);
    JetTensor Ric = make(S, n, 2, o);
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        for (int a = 0; a < n; ++a) Ric.c[b * n + d] += R.c[((a * n + b) * n + a) * n + d];
    Jet Rs(S, 0, o);
    for (int q = 0; q < n * n; ++q) fma(Rs, 1, git.c[q], Ric.c[q]);
    JetTensor P = make(S, n, 2, o);
    for (int q = 0; q < n * n; ++q) {
      P.c[q] = Ric.c[q];
      fma(P.c[q], -1.0 / (2.0 * (n - 1)), Rs, gt.c[q]);
      P.c[q] *= 1.0 / (n - 2);
    }
    JetTensor Wt = make(S, n, 4, o);
    for (int d = 0; d < n; ++d)
      for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            Jet v = Rl.c[((d * n + c) * n + a) * n + b];
            fma(v, 1, P.c[c * n + a], gt.c[d * n + b]);
            fma(v, -1, P.c[c * n + b], gt.c[d * n + a]);
            fma(v, -1, P.c[d * n + a], gt.c[b * n + c]);
            fma(v, 1, P.c[d * n + b], gt.c[a * n + c]);
            Wt.c[((d * n + c) * n + a) * n + b] = v;
          }
    riem0_ = Rl.values();
    ric0_ = Ric.values();
    if (need_of(SP) >= 0) tower(SP, P, need_of(SP));
    if (need_of(SW) >= 0) tower(SW, Wt, need_of(SW));
  }

  auto vec = [&](const std::optional<std::vector<Formula>>& v, const char* what, int ord) {
    if (!v) throw GeometryError(std::string("fixture ") + fx.name + " binds no " + what);
    JetTensor t = make(S, n, 1, ord);
    for (int i = 0; i < n; ++i) t.c[i] = (*v)[i].eval(X, konst).truncated(ord);
    return t;
  };
  auto sca = [&](const std::optional<Formula>& f, const char* what, int ord) {
    if (!f) throw GeometryError(std::string("fixture ") + fx.name + " binds no " + what);
    JetTensor t = make(S, n, 0, ord);
    t.c[0] = f->eval(X, konst).truncated(ord);
    return t;
  };
  if (int m = need_of(SF); m >= 0) {
    JetTensor A = vec(fx.A, "gauge potential A", m + 1);
    JetTensor F = make(S, n, 2, m);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) F.c[a * n + b] = A.c[b].d(a) - A.c[a].d(b);
    tower(SF, F, m);
  }
  if (int m = need_of(SJ); m >= 0) tower(SJ, vec(fx.J, "current J", m), m);
  if (int m = need_of(ST); m >= 0) {
    if (!fx.T) throw GeometryError("fixture " + fx.name + " binds no tensor T");
    JetTensor T = make(S, n, 2, m);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) T.c[a * n + b] = (*fx.T)[a][b].eval(X, konst).truncated(m);
    tower(ST, T, m);
  }
  if (int m = need_of(SPHI); m >= 0) tower(SPHI, sca(fx.phi, "scalar phi", m), m);
  if (int m = need_of(SPSI); m >= 0) tower(SPSI, sca(fx.psi, "scalar psi", m), m);
  if (need_of(G) >= 0) {
    vals_[{G, 0}] = g0_;
    for (int k = 1; k <= need_of(G); ++k) vals_[{G, k}].assign(ipow(n, k + 2), 0.0);
  }
}

bool Geometry::has(int sym, int nder) const { return vals_.count({sym, nder}) > 0; }

const std::vector<double>& Geometry::tensor(int sym, int nder) const {
  auto it = vals_.find({sym, nder});
  if (it == vals_.end())
    throw GeometryError(std::string("tensor ") + std::string(sym_info(sym).name) + " with " + std::to_string(nder) +
                        " derivatives was not prepared");
  return it->second;
}

}  // namespace bcalc
