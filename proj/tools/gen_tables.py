#!/usr/bin/env python3
"""Regenerates the embedded coefficient tables in src/rs_tables.inc and
src/gk_tables.inc from first principles.

Requires mpmath and sympy. The checked-in .inc files are the output of this
script; rerunning it must be a no-op unless the generation parameters change.

  python3 tools/gen_tables.py [--check]

With --check, verifies the tables on disk instead of rewriting them.
"""

import argparse
import os
import sys

import mpmath as mp
import sympy as sp

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# ---------------------------------------------------------------------------
# Chebyshev series on [0,1], a0-halved convention.

def cheb_fit(f, deg, dps=60):
    with mp.workdps(dps):
        m = deg + 1
        nodes = [mp.cos(mp.pi * (2 * k + 1) / (2 * m)) for k in range(m)]
        fv = [f((u + 1) / 2) for u in nodes]
        out = []
        for j in range(m):
            s = mp.fsum(fv[k] * mp.cos(j * mp.pi * (2 * k + 1) / (2 * m)) for k in range(m))
            out.append(2 * s / m)
        return out


def cheb_eval(a, p):
    u = 2 * p - 1
    b1 = b2 = mp.mpf(0)
    for j in range(len(a) - 1, 0, -1):
        b1, b2 = 2 * u * b1 - b2 + a[j], b1
    return u * b1 - b2 + a[0] / 2


def cheb_deriv(a):
    # d/dp with u = 2p-1, so a factor 2 on top of the [-1,1] recurrence.
    n = len(a)
    if n <= 1:
        return [mp.mpf(0)]
    b = [mp.mpf(0)] * n
    b[n - 2] = 2 * (n - 1) * a[n - 1]
    for j in range(n - 2, 0, -1):
        b[j - 1] = (b[j + 1] if j + 1 <= n - 2 else mp.mpf(0)) + 2 * j * a[j]
    return [2 * x for x in b[: n - 1]]


def cheb_combine(series, weights):
    n = max(len(s) for s in series)
    out = [mp.mpf(0)] * n
    for s, w in zip(series, weights):
        for j, v in enumerate(s):
            out[j] += w * v
    return out


def cheb_clean(a, zero_tol=mp.mpf('1e-40'), tail_tol=mp.mpf('1e-19')):
    a = [mp.mpf(0) if abs(v) < zero_tol else v for v in a]
    n = len(a)
    while n > 1 and abs(a[n - 1]) < tail_tol:
        n -= 1
    return a[:n]


# ---------------------------------------------------------------------------
# Riemann-Siegel correction coefficients C0..C4 as Chebyshev tables in the
# fractional part p of sqrt(t/2pi).  Psi has removable singularities at
# p = 1/4, 3/4; the Chebyshev route differentiates the series instead of the
# quotient, which stays stable through order 12.

def rs_correction_series():
    mp.mp.dps = 60

    def psi(p):
        p = mp.mpf(p)
        return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)

    d = [cheb_fit(psi, 120)]
    for _ in range(12):
        d.append(cheb_deriv(d[-1]))

    pi2, pi4, pi6, pi8 = mp.pi ** 2, mp.pi ** 4, mp.pi ** 6, mp.pi ** 8
    series = [
        d[0],
        cheb_combine([d[3]], [mp.mpf(-1) / (96 * pi2)]),
        cheb_combine([d[2], d[6]], [mp.mpf(1) / (64 * pi2), mp.mpf(1) / (18432 * pi4)]),
        cheb_combine([d[1], d[5], d[9]],
                     [mp.mpf(-1) / (64 * pi2), mp.mpf(-1) / (3840 * pi4), mp.mpf(-1) / (5308416 * pi6)]),
        cheb_combine([d[0], d[4], d[8], d[12]],
                     [mp.mpf(1) / (128 * pi2), mp.mpf(19) / (24576 * pi4),
                      mp.mpf(11) / (5898240 * pi6), mp.mpf(1) / (2038431744 * pi8)]),
    ]
    series = [cheb_clean(s) for s in series]

    # spot-check the tables against an independent reassembly through the
    # full Riemann-Siegel formula at scattered heights
    def rs_z(t):
        t = mp.mpf(t)
        a = mp.sqrt(t / (2 * mp.pi))
        n = int(mp.floor(a))
        p = a - n
        th = mp.siegeltheta(t)
        s = 2 * mp.fsum(mp.cos(th - t * mp.log(m)) / mp.sqrt(m) for m in range(1, n + 1))
        corr = mp.fsum(cheb_eval(series[j], p) * a ** (-j) for j in range(5))
        return s + (-1) ** (n - 1) * a ** mp.mpf('-0.5') * corr

    worst = mp.mpf(0)
    for t in [50, 77.3, 310.7, 1717.1, 9631.9]:
        worst = max(worst, abs(rs_z(t) - mp.siegelz(t)))
    if worst > mp.mpf('3e-7'):
        raise RuntimeError(f"correction tables failed spot check: {worst}")
    return series


# ---------------------------------------------------------------------------
# Gauss-7 / Kronrod-15 nodes and weights, derived rather than copied: the
# Kronrod extension adds the roots of the degree-8 Stieltjes polynomial E8,
# characterized by int_{-1}^{1} P7 E8 x^k dx = 0 for k = 0..7.

def gauss_kronrod_tables():
    x = sp.symbols('x')
    p7 = sp.legendre(7, x)
    cs = sp.symbols('c0:9')
    e8 = sum(cs[i] * x ** i for i in range(9))
    eqs = [sp.integrate(p7 * e8 * x ** k, (x, -1, 1)) for k in range(8)]
    sol = sp.solve(eqs + [cs[8] - 1], cs, dict=True)[0]
    e8 = sp.expand(e8.subs(sol))

    mp.mp.dps = 50

    def real_roots(poly):
        coeffs = [sp.Rational(poly.coeff(x, i)) for i in range(sp.degree(poly) + 1)]
        arr = [mp.mpf(c.p) / mp.mpf(c.q) for c in reversed(coeffs)]
        return sorted(mp.mpf(r.real) for r in mp.polyroots(arr, maxsteps=200, extraprec=200))

    g7 = real_roots(p7)
    k15 = sorted(g7 + real_roots(e8))

    def weights(nodes, exact_through):
        n = len(nodes)
        a = mp.matrix(n, n)
        b = mp.matrix(n, 1)
        for k in range(n):
            for j in range(n):
                a[k, j] = nodes[j] ** k
            b[k] = mp.mpf(2) / (k + 1) if k % 2 == 0 else mp.mpf(0)
        w = mp.lu_solve(a, b)
        for k in range(exact_through + 1):
            s = mp.fsum(w[j] * nodes[j] ** k for j in range(n))
            exact = mp.mpf(2) / (k + 1) if k % 2 == 0 else mp.mpf(0)
            if abs(s - exact) > mp.mpf('1e-40'):
                raise RuntimeError(f"weight exactness failed at degree {k}")
        return list(w)

    wg = weights(g7, 13)
    wk = weights(k15, 22)

    absc = sorted([t for t in k15 if t >= 0], reverse=True)
    wgk = [wk[k15.index(t)] for t in absc]
    # gauss nodes sit at the odd positions of absc
    wg_pos = [wg[g7.index(absc[i])] for i in range(1, len(absc), 2)]
    return absc, wgk, wg_pos


# ---------------------------------------------------------------------------

def fmt(v):
    s = mp.nstr(v, 17, strip_zeros=False)
    return s


def emit_array(name, arr, per_line=3):
    lines = [f"inline constexpr double {name}[{len(arr)}] = {{"]
    for i in range(0, len(arr), per_line):
        lines.append("    " + ", ".join(fmt(v) for v in arr[i:i + per_line]) + ",")
    lines.append("};")
    return "\n".join(lines)


def render_rs(series):
    parts = ["// Generated by tools/gen_tables.py; do not edit by hand.",
             "// Chebyshev coefficients (a0 halved, argument 2p-1) of the",
             "// Riemann-Siegel correction coefficients C0..C4 on p in [0,1].",
             ""]
    for j, s in enumerate(series):
        parts.append(emit_array(f"kC{j}", s))
        parts.append("")
    return "\n".join(parts)


def render_gk(absc, wgk, wg_pos):
    parts = ["// Generated by tools/gen_tables.py; do not edit by hand.",
             "// Gauss-7 / Kronrod-15 pair on [-1,1]: nonnegative abscissae in",
             "// descending order; Gauss nodes occupy the odd indices.",
             ""]
    parts.append(emit_array("kGK15Nodes", absc, per_line=1))
    parts.append("")
    parts.append(emit_array("kGK15Weights", wgk, per_line=1))
    parts.append("")
    parts.append(emit_array("kG7Weights", wg_pos, per_line=1))
    parts.append("")
    return "\n".join(parts)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument('--check', action='store_true')
    args = ap.parse_args()

    rs = render_rs(rs_correction_series())
    gk = render_gk(*gauss_kronrod_tables())

    targets = {
        os.path.join(ROOT, 'src', 'rs_tables.inc'): rs,
        os.path.join(ROOT, 'src', 'gk_tables.inc'): gk,
    }
    status = 0
    for path, text in targets.items():
        if args.check:
            with open(path) as fh:
                if fh.read() != text:
                    print(f"STALE: {path}")
                    status = 1
                else:
                    print(f"ok: {path}")
        else:
            with open(path, 'w') as fh:
                fh.write(text)
            print(f"wrote {path}")
    return status


if __name__ == '__main__':
    sys.exit(main())
