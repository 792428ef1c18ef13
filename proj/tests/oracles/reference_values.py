"""Independent reference values frozen into the C++ tests.

Run with: python3 tests/oracles/reference_values.py
Exact Fraction polynomial arithmetic plus mpmath quadrature.
"""
from fractions import Fraction as F
from mpmath import mp, quad, inf, findroot, mpf, sqrt

mp.dps = 30


def mul(p, q, n):
    out = [F(0)] * (n + 1)
    for i, a in enumerate(p[: n + 1]):
        if a:
            for j, b in enumerate(q[: n + 1 - i]):
                out[i + j] += a * b
    return out


def one_plus_pow(alpha, x, n):
    # (1 + x)^alpha for x with zero constant term
    out = [F(1)] + [F(0)] * n
    term = [F(1)] + [F(0)] * n
    coef = F(1)
    for k in range(1, n + 1):
        term = mul(term, x, n)
        coef = coef * (alpha - k + 1) / k
        out = [a + coef * b for a, b in zip(out, term)]
    return out


def integrate(p, n):
    return [F(0)] + [c / (k + 1) for k, c in enumerate(p[:n])]


def bs_metric_series(n):
    m = n + 2
    # ds/drho = (1 + s^2)^(1/4), s(0) = 0, by Picard iteration
    s = [F(0)] * (m + 1)
    for _ in range(m + 1):
        s = integrate(one_plus_pow(F(1, 4), mul(s, s, m), m), m)
    q = s[1:] + [F(0)]  # s / rho
    h2 = mul(mul(q, q, n), one_plus_pow(F(1, 2), mul(s, s, m), n), n)
    return h2[: n + 1], s


def hyperbolic_series(n):
    # sinh(r)^2 / r^2 = (cosh 2r - 1) / (2 r^2)
    out = []
    fact = 1
    for k in range(0, n + 1):
        if k % 2:
            out.append(F(0))
            continue
        j = k + 2
        f = 1
        for i in range(2, j + 1):
            f *= i
        out.append(F(2 ** j, 2 * f))
    return out


def v_series_undetermined(phi, beta, n):
    # Coefficientwise solve of sum_k h2_k r^k * v'' = 2 (exp(v) - 1), one unknown at a time
    v = [F(0), F(0), F(beta)] + [F(0)] * (n - 2)
    for k in range(3, n + 1):
        def residual(vk):
            w = list(v)
            w[k] = vk
            d2 = [(i + 2) * (i + 1) * w[i + 2] for i in range(n - 1)] + [F(0), F(0)]
            lhs = mul([F(0), F(0)] + list(phi[: n - 1]), d2, n)
            ex = [F(1)] + [F(0)] * n
            term = [F(1)] + [F(0)] * n
            fact = F(1)
            for j in range(1, n + 1):
                term = mul(term, w, n)
                fact /= j
                ex = [a + fact * b for a, b in zip(ex, term)]
            return lhs[k] - 2 * ex[k]
        r0 = residual(F(0))
        r1 = residual(F(1))
        v[k] = -r0 / (r1 - r0)
    return v


def fmt(seq):
    return "[" + ", ".join(str(c) for c in seq) + "]"


if __name__ == "__main__":
    bs, s_rho = bs_metric_series(12)
    print("bs h^2/rho^2:", fmt(bs))
    print("s(rho):", fmt(s_rho[:8]))
    print("hyperbolic:", fmt(hyperbolic_series(8)))
    print("euclidean beta=-1/3:", fmt(v_series_undetermined([F(1)] + [F(0)] * 12, F(-1, 3), 8)))
    print("hyperbolic beta=-1/3:", fmt(v_series_undetermined(hyperbolic_series(12), F(-1, 3), 8)))
    print("hyperbolic beta=-1:", fmt(v_series_undetermined(hyperbolic_series(12), F(-1), 8)))
    print("bs beta=-1:", fmt(v_series_undetermined(bs, F(-1), 8)))
    print("bs beta=-2:", fmt(v_series_undetermined(bs, F(-2), 8)))

    f = lambda x: (1 + x * x) ** mpf(-0.25)
    rho = lambda x: quad(f, [0, 1, x]) if x > 1 else quad(f, [0, x])
    print("rho(1) =", rho(1))
    print("rho(100) =", rho(100))
    g = lambda x: quad(lambda y: (1 + y * y) ** mpf(-0.75) / (2 * y * y), [x, 2 * x, 10 * x, inf])
    for target in (1, 10, 20, 50, 100):
        sv = findroot(lambda x: rho(x) - target, target * target / 4.0)
        print(f"rho={target}: s={sv}  G={g(sv)}")
    print("G_bs(s=1) =", g(1))
    big = mpf(10) ** 12
    tail = quad(lambda t: (1 + t * t) ** mpf(-0.25) - t ** mpf(-0.5), [1, 10, 100, 1000, inf])
    print("offset lim rho(s)-2 sqrt(s) =", rho(1) + tail - 2)
