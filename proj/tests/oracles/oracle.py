"""Independent reference values computed with scipy/mpmath.

Run: python3 tests/oracles/oracle.py
The numbers printed here are frozen into the C++ test suites.
"""
import math
import mpmath as mp
from scipy import integrate

mp.mp.dps = 30
S4 = 8 * math.pi**2 / 3


def sphere(d):
    return 2 * math.pi ** (d / 2) / math.gamma(d / 2)


def J(d, s, rho, tau):
    m = tau * tau - rho * rho
    if tau < math.sqrt(4 * s * s + rho * rho):
        return 0.0
    return sphere(d) / 2 ** (d - 2) * (m - 4 * s * s) ** ((d - 2) / 2) / math.sqrt(m)


def beta_scaled(a, s, beta):
    f = lambda x: mp.e ** (-2 * x) * (x * x - (a * s) ** 2) ** 1.5 * x ** (2 * beta - 1)
    return S4 * a ** (2 - 2 * beta) * mp.quad(f, [a * s, a * s + 1, mp.inf])


def l4_closed_scaled(a, s):
    # a^10 * ||e^{it phi} f_a||_4^4 via x = a tau, y = a rho
    c = S4**2 / (2**6 * (2 * math.pi) ** 14) * S4
    def inner(x):
        if x <= 2 * a * s:
            return 0
        lim = mp.sqrt(x * x - (2 * a * s) ** 2)
        g = lambda y: (x * x - y * y - (2 * a * s) ** 2) ** 3 / (x * x - y * y) * y**4
        return mp.quad(g, [0, lim])
    return c * mp.quad(lambda x: mp.e ** (-2 * x) * inner(x), [2 * a * s, 2 * a * s + 1, 10, mp.inf])


def quotient(a, s):
    lhs = l4_closed_scaled(a, s)
    b1 = beta_scaled(a, s, 1)
    bh = beta_scaled(a, s, 0.5)
    # a^10 (2pi)^10 value4 = b1^2 - s^2 (a^5 (2pi)^5 ||phi^1/2 f||^2)^2 = b1^2 - s^2 (bh/a)^2 a^2...
    # bh = a^5 (2pi)^5 ||phi^{1/2} f||^2 ; a^10(2pi)^10 s^2||..||^4 = s^2 bh^2
    v4 = (b1**2 - s * s * bh**2) / (2 * math.pi) ** 10
    return lhs / v4, lhs, v4


def concentration(a, s, R):
    # g = f_a / ||f_a||_(s)
    _, _, v4 = quotient(a, s)       # a^10 * value4
    norm2 = mp.sqrt(v4) / a**5      # ||f_a||_(s)^2
    bh = beta_scaled(a, s, 0.5) / a**5 / (2 * math.pi) ** 5
    half = mp.sqrt(bh / norm2)
    phi = lambda r: mp.sqrt(s * s + r * r)
    ball = S4 * mp.quad(lambda r: mp.e ** (-2 * a * phi(r)) * r**4, [0, R]) / norm2
    return half, mp.sqrt(ball)


def ijk(kind, j, k, a, s):
    e = 2 * a * s
    if kind == "I":
        f = lambda x: mp.e ** (-2 * x) * x ** (2 * j) * (x * x - e * e) ** ((2 * k + 5) / 2) / (2 * k + 5)
        return a ** (4 - 2 * (j + k)) * mp.quad(f, [e, e + 1, mp.inf])
    def inner(x):
        lim = mp.sqrt(x * x - e * e)
        return mp.quad(lambda y: y ** (2 * k + 4) / (x * x - y * y), [0, lim * 0.5, lim * 0.99, lim])
    return a ** (6 - 2 * (j + k)) * mp.quad(lambda x: mp.e ** (-2 * x) * x ** (2 * j) * inner(x), [e, e + 1, 5, mp.inf])


def d1_identity(s, A, B):
    phi = lambda y: math.sqrt(s * s + y * y)
    def w(y2, y1):
        den = abs(y1 * phi(y2) - y2 * phi(y1))
        return phi(y1) * phi(y2) / den
    v, _ = integrate.dblquad(w, A[0], A[1], B[0], B[1], epsabs=0, epsrel=1e-12)
    return v / (2 * math.pi) ** 2


def d1_or_rhs(A, B):
    def w(y2, y1):
        return (1 + y1 * y1) ** 0.75 * (1 + y2 * y2) ** 0.75 / abs(y1 - y2)
    v, _ = integrate.dblquad(w, A[0], A[1], B[0], B[1], epsabs=0, epsrel=1e-12)
    return v / (2 * math.pi) ** 2


if __name__ == "__main__":
    print("KG(5)*(2pi)^10 =", 2 ** -2 * S4 / (2 * math.pi) ** 4, "1/(24pi^2) =", 1 / (24 * math.pi**2))
    print("J(5,1,0,3) =", J(5, 1, 0, 3), " J(5,1,1,sqrt10) =", J(5, 1, 1, math.sqrt(10)))
    print("J(2,0,0,2) =", J(2, 0, 0, 2))
    for a in [1, 0.3, 0.1, 0.03, 0.01]:
        q, lhs, v4 = quotient(a, 1)
        print(f"quotient a={a}: {mp.nstr(q, 15)} rel_gap={mp.nstr(1 - q * 24 * math.pi**2, 6)}  a10*lhs={mp.nstr(lhs, 15)}")
    for a in [0.3, 0.1, 0.03, 0.01]:
        h, b = concentration(a, 1, 1)
        print(f"concentration a={a}: half={mp.nstr(h, 10)} ball={mp.nstr(b, 10)}")
    for a in [1, 1e-3]:
        print(f"beta a={a}: b1={mp.nstr(beta_scaled(a, 1, 1), 15)} bh={mp.nstr(beta_scaled(a, 1, 0.5), 15)} limit={0.75 * S4}")
    for a in [1, 0.3]:
        tot = 0
        c = {(0, 0): 16, (1, 0): -8, (0, 1): 8, (1, 1): -2, (0, 2): 1, (2, 0): 1}
        for (j, k), cj in c.items():
            tot += cj * (ijk("I", j, k, a, 1) - 4 * ijk("II", j, k, a, 1))
        print(f"assembly a={a}: {mp.nstr(tot * S4**3 / (2**6 * (2 * math.pi) ** 14), 15)}  closed={mp.nstr(l4_closed_scaled(a, 1), 15)}")
    for (j, k) in [(2, 0), (0, 2), (1, 1), (0, 0), (1, 0), (0, 1)]:
        print(f"a^10 I_{j},{k} at a=1e-3:", mp.nstr(ijk("I", j, k, 1e-3, 1), 12))
    for (j, k) in [(0, 2), (1, 1), (2, 0), (3, -1)]:
        print(f"a^10 II_{j},{k} at a=1:", mp.nstr(ijk("II", j, k, 1, 1), 12), " a=0.3:", mp.nstr(ijk("II", j, k, 0.3, 1), 12))
    for s in [1.0, 0.5, 2.0]:
        print(f"d1 identity s={s} [1,2]x[-2,-1]:", d1_identity(s, (1, 2), (-2, -1)))
    print("d1 identity s=1 [1,2]x[3,4]:", d1_identity(1, (1, 2), (3, 4)))
    print("OR rhs s=1 [1,2]x[-2,-1]:", d1_or_rhs((1, 2), (-2, -1)))
