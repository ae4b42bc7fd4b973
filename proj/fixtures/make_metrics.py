"""Writes the metric fixtures in fixtures/metrics (run from the repo root)."""
import random
import sympy as sp

OUT = "fixtures/metrics/"


def fmt(e):
    s = sp.sstr(sp.expand(e) if e.is_polynomial() else sp.together(e))
    return s.replace("**", "^")


def write(name, coords, g, points, fields=None, flags=None, comment=""):
    n = len(coords)
    lines = []
    if comment:
        lines += ["# " + c for c in comment.strip().split("\n")]
    lines.append(f"name = {name}")
    lines.append("coords = " + " ".join(str(c) for c in coords))
    for k, v in (flags or {}).items():
        lines.append(f"{k} = {'true' if v else 'false'}")
    for i in range(n):
        for j in range(i, n):
            if g[i, j] != 0:
                lines.append(f"g {i} {j} = {fmt(g[i, j])}")
    for key, val in (fields or {}).items():
        if key in ("A", "J"):
            for i, c in enumerate(val):
                if c != 0:
                    lines.append(f"{key} {i} = {fmt(c)}")
        elif key == "T":
            for i in range(n):
                for j in range(i, n):
                    if val[i, j] != 0:
                        lines.append(f"T {i} {j} = {fmt(val[i, j])}")
        else:
            lines.append(f"{key} = {fmt(val)}")
    for p in points:
        lines.append("point = " + " ".join(repr(x) for x in p))
    with open(OUT + name + ".fx", "w") as f:
        f.write("\n".join(lines) + "\n")


def jac(X, y):
    return sp.Matrix([[sp.diff(Xi, yj) for yj in y] for Xi in X])


def curvilinear(n, seed):
    """Flat metric pulled back by X_i = y_i + c_i y_{i+1}^2."""
    rnd = random.Random(seed)
    y = sp.symbols(f"y1:{n + 1}")
    X = [y[i] + sp.Rational(rnd.randint(1, 5), 10) * y[(i + 1) % n] ** 2 for i in range(n)]
    # keep the map invertible near the origin: break the cycle
    X[n - 1] = y[n - 1]
    J = jac(X, y)
    return y, X, J, (J.T * J).applyfunc(sp.expand)


def points(n, seed, k=3, r=0.3):
    rnd = random.Random(seed)
    return [[round(rnd.uniform(-r, r), 3) for _ in range(n)] for _ in range(k)]


def maxwell4(x):
    # flat quadratic Maxwell field: div A = 0 and A harmonic
    return [x[1] * x[2], x[2] * x[3], x[3] * x[0], x[0] * x[1]]


def pull_covector(w, X, J, y):
    sub = dict(zip(sp.symbols(f"x1:{len(X) + 1}"), X))
    ws = [sp.sympify(c).subs(sub, simultaneous=True) for c in w]
    return [sp.expand(sum(J[i, a] * ws[i] for i in range(len(X)))) for a in range(len(y))]


# flat metrics in curvilinear coordinates, with matter for the flat suites
for n in (4, 5, 6, 7, 8):
    y, X, J, g = curvilinear(n, 10 + n)
    x = sp.symbols(f"x1:{n + 1}")
    # degree 6 so that (nabla.nabla)^3 phi does not vanish
    phi_c = (x[0] ** 2 * x[1] + x[1] * x[2] ** 2 - x[0] * x[n - 1] + sp.Rational(1, 3) * x[2] ** 3
             + x[0] ** 2 * x[1] ** 2 * x[2] ** 2 + sp.Rational(1, 3) * x[0] ** 4 * x[n - 1] ** 2)
    sub = dict(zip(x, X))
    fields = {"phi": phi_c.subs(sub, simultaneous=True)}
    if n >= 4:
        a = maxwell4(x) + [0] * (n - 4)
        fields["A"] = pull_covector(a, X, J, y)
    fields["J"] = [y[(i + 1) % n] ** 2 - y[i] * y[(i + 2) % n] for i in range(n)]
    write(f"flat{n}", y, g, points(n, 100 + n), fields, {"flat": True},
          "flat metric in the coordinates y of X_i = y_i + c y_(i+1)^2")

# flat d=5 with a Hessian T of a harmonic potential (divergence free)
n = 5
y, X, J, g = curvilinear(n, 55)
x = sp.symbols(f"x1:{n + 1}")
Phi = x[0] ** 3 - 3 * x[0] * x[1] ** 2 + x[2] * x[3] * x[4] + x[2] ** 2 - x[4] ** 2 + x[0] * x[1] * x[3]
assert sp.expand(sum(sp.diff(Phi, xi, 2) for xi in x)) == 0
H = sp.hessian(Phi, x)
sub = dict(zip(x, X))
Hs = H.subs(sub, simultaneous=True)
T = (J.T * Hs * J).applyfunc(sp.expand)
write("flat5-potential", y, g, points(n, 155), {"T": T}, {"flat": True},
      "flat d=5 in curvilinear coordinates; T = Hessian of a harmonic potential")


def sphere(coords, r2):
    s = sum(c ** 2 for c in coords)
    f = 4 * r2 / (1 + s) ** 2
    return f


# S2 x S2, unit radii: Einstein with Ric = g
x, yy, u, v = sp.symbols("x y u v")
c = [x, yy, u, v]
g = sp.zeros(4)
f1, f2 = sphere([x, yy], 1), sphere([u, v], 1)
g[0, 0] = g[1, 1] = f1
g[2, 2] = g[3, 3] = f2
A = [-2 * yy / (1 + x ** 2 + yy ** 2), 2 * x / (1 + x ** 2 + yy ** 2),
     sp.Rational(1, 2) * (-v / (1 + u ** 2 + v ** 2)), sp.Rational(1, 2) * u / (1 + u ** 2 + v ** 2)]
write("s2xs2", c, g, points(4, 24, r=0.5),
      {"A": A, "J": [x * u, yy - v ** 2, x * yy * v, u + x ** 2]}, {"einstein": True, "ym-on-shell": True},
      "S2 x S2 with unit radii in stereographic coordinates; F = multiples of the area forms")

# S2(1) x S4(sqrt 3): Einstein with Ric = g
x1, x2, u1, u2, u3, u4 = sp.symbols("x1 x2 u1 u2 u3 u4")
c = [x1, x2, u1, u2, u3, u4]
g = sp.zeros(6)
fa, fb = sphere([x1, x2], 1), sphere([u1, u2, u3, u4], 3)
g[0, 0] = g[1, 1] = fa
for i in range(2, 6):
    g[i, i] = fb
s2 = 1 + x1 ** 2 + x2 ** 2
A = [-2 * x2 / s2 * sp.Rational(3, 2), 2 * x1 / s2 * sp.Rational(3, 2)] + maxwell4([u1, u2, u3, u4])
write("s2xs4", c, g, points(6, 46, r=0.5),
      {"A": A, "J": [x1 * u1, x2 - u2 ** 2, u3 * u4, x1 * x2 + u1, u2 * u3 - x1, u4 ** 2]},
      {"einstein": True, "ym-on-shell": True},
      "S2(1) x S4(sqrt 3) in stereographic coordinates, Einstein with Ric = g;\n"
      "F = area form of S2 plus a flat Maxwell field carried conformally to S4")

# round spheres (conformally flat Einstein) in d = 5, 7
for n in (4, 5, 6, 7):
    xs = sp.symbols(f"x1:{n + 1}")
    g = sp.eye(n) * sphere(xs, 1)
    fields, flags = {}, {"einstein": True}
    if n == 4:
        # Maxwell is conformally invariant in four dimensions
        fields["A"] = maxwell4(xs)
        flags["ym-on-shell"] = True
    write(f"sphere{n}", xs, g, points(n, 200 + n, r=0.5), fields, flags, "unit round sphere, stereographic")

# conformally flat e^{2 w} delta
for n in (4, 6):
    xs = sp.symbols(f"x1:{n + 1}")
    w = sp.Rational(1, 5) * xs[0] * xs[1] - sp.Rational(1, 10) * xs[2] ** 2 + sp.Rational(1, 7) * xs[n - 1] * xs[0] ** 2
    g = sp.eye(n) * sp.exp(2 * w)
    write(f"confflat{n}", xs, g, points(n, 300 + n), {}, {}, "conformally flat e^(2w) delta with polynomial w")


# random polynomial perturbations of flat: delta + eps * symmetric quadratic polynomials
def random_metric(n, seed):
    rnd = random.Random(seed)
    xs = sp.symbols(f"x1:{n + 1}")
    g = sp.eye(n)
    for i in range(n):
        for j in range(i, n):
            p = 0
            for _ in range(3):
                a, b = rnd.randrange(n), rnd.randrange(n)
                p += sp.Rational(rnd.randint(-9, 9), 40) * xs[a] * xs[b]
            p += sp.Rational(rnd.randint(-9, 9), 40) * xs[rnd.randrange(n)]
            p += sp.Rational(rnd.randint(-5, 5), 60) * xs[rnd.randrange(n)] ** 3
            g[i, j] += p
            if i != j:
                g[j, i] += p
    return xs, g


for n in (4, 5, 6):
    for k in range(3):
        xs, g = random_metric(n, 1000 * n + k)
        extra = {}
        if n == 4 and k == 0:
            extra["omega"] = sp.Rational(1, 10) * xs[0] * xs[1] - sp.Rational(1, 20) * xs[2] ** 2 + sp.Rational(1, 15) * xs[3]
        rnd = random.Random(7 * n + k)
        extra["phi"] = sum(sp.Rational(rnd.randint(-5, 5), 7) * xs[rnd.randrange(n)] * xs[rnd.randrange(n)] for _ in range(4)) + xs[0] ** 3 / 5
        extra["A"] = [xs[(i + 1) % n] * xs[(i + 2) % n] / 2 - xs[i] ** 2 / 3 for i in range(n)]
        extra["J"] = [xs[i] * xs[(i + 3) % n] + xs[(i + 1) % n] / 4 for i in range(n)]
        T = sp.zeros(n)
        for i in range(n):
            for j in range(i, n):
                T[i, j] = T[j, i] = sp.Rational(rnd.randint(-9, 9), 9) * xs[(i + j) % n] + sp.Rational(rnd.randint(-5, 5), 5) * xs[i] * xs[j]
        extra["T"] = T
        write(f"random{n}-{k}", xs, g, points(n, 400 + 10 * n + k, r=0.25), extra, {},
              "flat metric plus a random polynomial perturbation (not Einstein)")
