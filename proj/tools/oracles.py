#!/usr/bin/env python3
"""Independent high-precision reference values frozen into the C++ tests.

Everything here is evaluated with mpmath at 30 digits, from the defining
integrals and formulas, without sharing code with the library.
Run: python3 tools/oracles.py
"""
import mpmath as mp

mp.mp.dps = 30


def show(label, value):
    print(f"{label:48s} {mp.nstr(value, 17)}")


def gauss_hat(n, c, a, s):
    """Transform of c*exp(-a|x|^2) on R^n at |xi| = s."""
    return c * (mp.pi / a) ** (mp.mpf(n) / 2) * mp.exp(-s * s / (4 * a))


def mode(t, s, m, u0, u1):
    """(u_hat, ut_hat) from the characteristic roots, in complex arithmetic."""
    q = s * s
    k = q + m * m
    disc = mp.sqrt(mp.mpc(q * q - 4 * k))
    l1 = (-q + disc) / 2
    l2 = (-q - disc) / 2
    if abs(l1 - l2) < mp.mpf(10) ** -20:
        lam = l1
        u = mp.exp(lam * t) * (u0 + (u1 - lam * u0) * t)
        ut = mp.exp(lam * t) * (lam * u0 + (u1 - lam * u0) * (1 + lam * t))
        return u, ut
    a = (u1 - l2 * u0) / (l1 - l2)
    b = (l1 * u0 - u1) / (l1 - l2)
    u = a * mp.exp(l1 * t) + b * mp.exp(l2 * t)
    ut = a * l1 * mp.exp(l1 * t) + b * l2 * mp.exp(l2 * t)
    return u, ut


def radial(n, f, hi):
    """Integral over R^n of a radial function f(|xi|) on |xi| <= hi."""
    area = 2 * mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2)
    pts = mp.linspace(0, hi, 40)
    return area * mp.quad(lambda r: f(r) * r ** (n - 1), pts)


def solution_norms(t, n, m, hi=40):
    """Norms of u for u0 = u1 = exp(-|x|^2) via Plancherel."""
    fac = (2 * mp.pi) ** (-n)

    def parts(r):
        h = gauss_hat(n, 1, 1, r)
        return mode(t, r, m, h, h)

    l2 = radial(n, lambda r: abs(parts(r)[0]) ** 2, hi)
    gr = radial(n, lambda r: r * r * abs(parts(r)[0]) ** 2, hi)
    ut = radial(n, lambda r: abs(parts(r)[1]) ** 2, hi)
    return mp.sqrt(fac * l2), mp.sqrt(fac * gr), mp.sqrt(fac * ut)


def main():
    show("datum_hat gaussian n=1 xi=0", gauss_hat(1, 1, 1, 0))
    show("datum_hat gaussian n=2 |xi|=2", gauss_hat(2, 1, 1, 2))
    show("l11 gaussian n=1",
         mp.quad(lambda x: (1 + abs(x)) * mp.exp(-x * x), [-mp.inf, 0, mp.inf]))
    show("A gaussian n=1 xi=2",
         mp.quad(lambda x: (mp.cos(2 * x) - 1) * mp.exp(-x * x), [-mp.inf, 0, mp.inf]))
    show("root imag (1, m=1)", mp.sqrt(7) / 2)

    u, _ = mode(2, 1, 1, 1, 1)
    show("mode u |xi|=1 m=1 u0=u1=1 t=2", mp.re(u))
    u, ut = mode(3, 4, 1, 1, 0)
    show("mode u |xi|=4 m=1 u0=1 t=3 (overdamped)", mp.re(u))
    show("mode ut |xi|=4 m=1 u0=1 t=3 (overdamped)", mp.re(ut))
    u, ut = mode(1.5, 2, 0, 1, -1)
    show("mode u |xi|=2 m=0 u0=1 u1=-1 t=1.5 (critical)", mp.re(u))

    show("profile P1=sqrt(pi) |xi|=1 t=1",
         mp.sqrt(mp.pi) * mp.exp(-0.5) * mp.sin(mp.sqrt(2)) / mp.sqrt(2))

    # K1..K3 from their defining displays at |xi| = 0.3, m = 1, t = 5.
    s, m, t = mp.mpf("0.3"), 1, 5
    q = s * s
    D = 4 * (q + m * m) - q * q
    e = mp.exp(-t * q / 2)
    sn = mp.sin(t * mp.sqrt(D) / 2)
    cs = mp.cos(t * mp.sqrt(D) / 2)
    P = mp.sqrt(mp.pi)
    A = mp.sqrt(mp.pi) * (mp.exp(-q / 4) - 1)
    show("K1 gaussian pair n=1 |xi|=0.3 t=5", P * q * e * sn / mp.sqrt(D))
    show("K2 gaussian pair n=1 |xi|=0.3 t=5", A * 2 * e * sn / mp.sqrt(D))
    show("K3 gaussian pair n=1 |xi|=0.3 t=5", A * (q * e * sn / mp.sqrt(D) + e * cs))

    theta = mp.findroot(lambda x: x * mp.sin(x) - (1 - mp.cos(x)), 2.3)
    show("L = sup (1-cos)/theta", (1 - mp.cos(theta)) / theta)

    j = mp.quad(lambda x: mp.exp(-100 * x * x), [-1, 0, 1])
    show("calibration gamma=1 k=0 n=1 t=100", j)
    show("calibration normalised", j * mp.sqrt(101))

    show("predicted amplitude n=1 m=1", abs(mp.quad(lambda x: mp.exp(-(1 - 1j) * x * x), [0, mp.inf])))
    show("predicted amplitude n=2 m=1", abs(mp.quad(lambda x: x * mp.exp(-(1 - 1j) * x * x), [0, mp.inf])))

    show("L1", mp.sqrt(mp.pi) / 2)
    show("L3", mp.quad(lambda x: x * x * mp.exp(-x * x), [0, mp.inf]))

    for n in (1, 2):
        l2, gr, ut = solution_norms(10, n, 1)
        show(f"|u| gaussian pair n={n} m=1 t=10", l2)
        show(f"|grad u| gaussian pair n={n} m=1 t=10", gr)
        show(f"|u_t| gaussian pair n={n} m=1 t=10", ut)
    l2, _, _ = solution_norms(100, 1, 0, hi=10)
    show("|u| gaussian pair n=1 m=0 t=100", l2)

    # Oscillation integrals at n = 1, m = 1, t = 100 on R.
    t = 100
    w = lambda x: mp.exp(-t * x * x)
    r = lambda x: mp.sqrt(x * x + 1)
    pts = mp.linspace(0, 1, 60)
    show("I0 n=1 m=1 t=100", 2 * mp.quad(lambda x: w(x) * mp.cos(t * r(x)) ** 2, pts))
    show("I1 n=1 m=1 t=100", 2 * mp.quad(lambda x: w(x) * mp.sin(t * r(x)) ** 2 / r(x) ** 2, pts))
    show("I2 n=1 m=1 t=100", 2 * mp.quad(lambda x: w(x) * mp.sin(2 * t * r(x)) / r(x), pts))
    sig = mp.linspace(0, 12, 80)
    show("A(t) n=1 m=1 t=100",
         mp.quad(lambda g: mp.exp(-g * g) * t / (g * g + t), sig))
    show("C1(t) n=1 m=1 t=100",
         mp.quad(lambda g: mp.exp(-g * g) * t / (g * g + t) * mp.cos(2 * t * mp.sqrt(g * g / t + 1)), sig))
    show("I(t) n=1 m=1 t=100",
         mp.quad(lambda g: mp.exp(-g * g) * mp.cos(2 * t * mp.sqrt(g * g / t + 1)), sig))


if __name__ == "__main__":
    main()
