#include "bcalc/fdoracle.hpp"

#include <Eigen/Dense>

#include <functional>

namespace bcalc {

namespace {

using LD = long double;
using Vec = std::vector<LD>;
using Pt = std::vector<LD>;
using Fn = std::function<Vec(const Pt&)>;

struct Fd {
  const Fixture& fx;
  int n;
  LD h;

  // d/dx_a of f at x
  Vec diff(const Fn& f, const Pt& x, int a) const {
    static const LD c[4] = {4.0L / 5, -1.0L / 5, 4.0L / 105, -1.0L / 280};
    Vec out;
    for (int k = 1; k <= 4; ++k) {
      Pt xp = x, xm = x;
      xp[a] += k * h;
      xm[a] -= k * h;
      Vec fp = f(xp), fm = f(xm);
      if (out.empty()) out.assign(fp.size(), 0);
      for (size_t i = 0; i < fp.size(); ++i) out[i] += c[k - 1] * (fp[i] - fm[i]) / h;
    }
    return out;
  }
  // gradient, derivative index first
  Vec grad(const Fn& f, const Pt& x) const {
    Vec out;
    for (int a = 0; a < n; ++a) {
      Vec d = diff(f, x, a);
      out.insert(out.end(), d.begin(), d.end());
    }
    return out;
  }

  Vec metric(const Pt& x) const {
    auto konst = [](double v) { return (LD)v; };
    Vec g(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[i * n + j] = fx.g[i][j].eval(x, konst);
    return g;
  }
  Vec inverse(const Vec& g) const {
    Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic> M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = g[i * n + j];
    Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic> Mi = M.inverse();
    Vec out(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i * n + j] = Mi(i, j);
    return out;
  }
  // Gamma^k_ij
  Vec gamma(const Pt& x) const {
    Vec g = metric(x), gi = inverse(g);
    Vec dg = grad([this](const Pt& y) { return metric(y); }, x);
    Vec G(n * n * n, 0);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          LD s = 0;
          for (int l = 0; l < n; ++l)
            s += gi[k * n + l] * (dg[(i * n + j) * n + l] + dg[(j * n + i) * n + l] - dg[(l * n + i) * n + j]);
          G[(k * n + i) * n + j] = s / 2;
        }
    return G;
  }
  // all lower R_abcd
  Vec riemann(const Pt& x) const {
    Vec G = gamma(x), g = metric(x);
    Vec dG = grad([this](const Pt& y) { return gamma(y); }, x);
    auto gm = [&](int a, int b, int c) { return G[(a * n + b) * n + c]; };
    auto dgm = [&](int d, int a, int b, int c) { return dG[((d * n + a) * n + b) * n + c]; };
    Vec Ru(n * n * n * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            LD v = dgm(c, a, d, b) - dgm(d, a, c, b);
            for (int e = 0; e < n; ++e) v += gm(a, c, e) * gm(e, d, b) - gm(a, d, e) * gm(e, c, b);
            Ru[((a * n + b) * n + c) * n + d] = v;
          }
    Vec R(Ru.size(), 0);
    for (int a = 0; a < n; ++a)
      for (int q = 0; q < n * n * n; ++q)
        for (int e = 0; e < n; ++e) R[a * n * n * n + q] += g[a * n + e] * Ru[e * n * n * n + q];
    return R;
  }
  Vec ricci_of(const Vec& R, const Vec& gi) const {
    Vec Ric(n * n, 0);
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        for (int a = 0; a < n; ++a)
          for (int e = 0; e < n; ++e) Ric[b * n + d] += gi[a * n + e] * R[((e * n + b) * n + a) * n + d];
    return Ric;
  }
  Vec schouten(const Pt& x) const {
    Vec g = metric(x), gi = inverse(g);
    Vec Ric = ricci_of(riemann(x), gi);
    LD Rs = 0;
    for (int q = 0; q < n * n; ++q) Rs += gi[q] * Ric[q];
    Vec P(n * n);
    for (int q = 0; q < n * n; ++q) P[q] = (Ric[q] - Rs * g[q] / (2 * (n - 1))) / (n - 2);
    return P;
  }
  Vec weyl(const Pt& x) const {
    Vec R = riemann(x), P = schouten(x), g = metric(x);
    Vec W(R.size());
    for (int d = 0; d < n; ++d)
      for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            W[((d * n + c) * n + a) * n + b] = R[((d * n + c) * n + a) * n + b] + P[c * n + a] * g[d * n + b] -
                                               P[c * n + b] * g[d * n + a] - P[d * n + a] * g[b * n + c] +
                                               P[d * n + b] * g[a * n + c];
    return W;
  }
  // nabla_c T_ab for a rank-2 field given as a function
  Vec nabla2(const Fn& T, const Pt& x) const {
    Vec G = gamma(x), t = T(x), dT = grad(T, x);
    Vec out(n * n * n);
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          LD v = dT[(c * n + a) * n + b];
          for (int e = 0; e < n; ++e) v -= G[(e * n + c) * n + a] * t[e * n + b] + G[(e * n + c) * n + b] * t[a * n + e];
          out[(c * n + a) * n + b] = v;
        }
    return out;
  }
  Vec cotton(const Pt& x) const {
    Vec dP = nabla2([this](const Pt& y) { return schouten(y); }, x);
    Vec C(n * n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) C[(a * n + b) * n + c] = dP[(c * n + a) * n + b] - dP[(b * n + a) * n + c];
    return C;
  }
  Vec bach(const Pt& x) const {
    Vec G = gamma(x), C = cotton(x), gi = inverse(metric(x)), P = schouten(x), W = weyl(x);
    Vec dC = grad([this](const Pt& y) { return cotton(y); }, x);
    auto idx3 = [&](int a, int b, int c) { return (a * n + b) * n + c; };
    Vec B(n * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        LD v = 0;
        for (int c = 0; c < n; ++c)
          for (int e = 0; e < n; ++e) {
            // nabla_e C_abc
            LD nc = dC[e * n * n * n + idx3(a, b, c)];
            for (int f = 0; f < n; ++f)
              nc -= G[idx3(f, e, a)] * C[idx3(f, b, c)] + G[idx3(f, e, b)] * C[idx3(a, f, c)] +
                    G[idx3(f, e, c)] * C[idx3(a, b, f)];
            v += gi[e * n + c] * nc;
          }
        for (int d = 0; d < n; ++d)
          for (int c = 0; c < n; ++c) {
            LD Pu = 0;  // P^dc
            for (int p = 0; p < n; ++p)
              for (int q = 0; q < n; ++q) Pu += gi[d * n + p] * gi[c * n + q] * P[p * n + q];
            v -= Pu * W[((d * n + a) * n + b) * n + c];
          }
        B[a * n + b] = v;
      }
    return B;
  }
};

std::vector<double> to_d(const Vec& v) { return std::vector<double>(v.begin(), v.end()); }

}  // namespace

FdCurvature fd_curvature(const Fixture& fx, const std::vector<double>& x0, double h, bool with_cotton,
                         bool with_bach) {
  Fd fd{fx, fx.dim(), (LD)h};
  Pt x(x0.begin(), x0.end());
  FdCurvature out;
  out.christoffel = to_d(fd.gamma(x));
  out.riemann = to_d(fd.riemann(x));
  out.ricci = to_d(fd.ricci_of(fd.riemann(x), fd.inverse(fd.metric(x))));
  out.schouten = to_d(fd.schouten(x));
  out.weyl = to_d(fd.weyl(x));
  if (with_cotton || with_bach) out.cotton = to_d(fd.cotton(x));
  if (with_bach) out.bach = to_d(fd.bach(x));
  return out;
}

}  // namespace bcalc
