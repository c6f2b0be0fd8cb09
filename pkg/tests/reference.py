"""High-precision reference evaluations used to freeze expected values.

Everything here is written independently of the package: mpmath at 50
digits, exact rationals for binomial sums, and the textbook form of each
closed-form expression.
"""
from fractions import Fraction
from math import comb

import mpmath as mp

mp.mp.dps = 50


def h(p):
    p = mp.mpf(p)
    if p in (0, 1):
        return mp.mpf(0)
    return -p * mp.log(p, 2) - (1 - p) * mp.log(1 - p, 2)


def hhat(x):
    x = mp.mpf(x)
    return h(x) if x < mp.mpf(1) / 2 else mp.mpf(1)


def binomial_tail(m, p, k):
    p = Fraction(p)
    return sum(comb(m, j) * p**j * (1 - p) ** (m - j) for j in range(k, m + 1))


def delta(m, n, eps):
    return mp.sqrt((m + n + 2) / mp.mpf(m * (m + n)) * mp.log(2 / mp.mpf(eps) ** 2))


def nu(b, m, eps):
    return 4 * mp.mpf(b) ** 2 + mp.log(1 / (2 * mp.mpf(eps))) / mp.sqrt(m)


def gamma(x):
    x = mp.mpf(x)
    s = mp.sqrt(1 + x * x)
    return (x + s) * (x / (s - 1)) ** x


def delta_prime(N, n, m, eps):
    return 2 * mp.sqrt(mp.mpf(N) ** 2 / (mp.mpf(n) ** 2 * m) * mp.log(4 / mp.mpf(eps)))


def mu(N, m, n, eps):
    return mp.sqrt(mp.mpf(N) * (m + 1) / (mp.mpf(n) * m * m) * mp.log(2 / mp.mpf(eps)))


def counts(N, frac=0.07):
    m = int(round(frac * N))
    return N, m, N - m


def qrng_ours(N, b, wq, eps=mp.mpf("1e-36")):
    N, m, n = counts(N)
    arg = wq + nu(b, m, eps) + delta(m, n, eps)
    return (n * (1 - hhat(arg)) + 2 * mp.log(1 / eps, 2)) / N


def qrng_other(N, b, wq, eps=mp.mpf("1e-12")):
    N, m, n = counts(N)
    c = -mp.log(mp.mpf(1) / 2 + mp.mpf(b), 2)
    return (n * c - n * mp.log(gamma(wq + delta_prime(N, n, m, eps)), 2)) / N


def qkd_old(N, b, wq, eps=mp.mpf("1e-12"), f=mp.mpf("1.2")):
    N, m, n = counts(N)
    c = -mp.log(mp.mpf(1) / 2 + mp.mpf(b), 2)
    he = hhat(wq + mu(N, m, n, eps))
    return (n * (c - he) - f * n * he - mp.log(2 / eps**2, 2)) / N


def qkd_new(N, b, wq, eps=mp.mpf("1e-36"), f=mp.mpf("1.2")):
    N, m, n = counts(N)
    d = delta(m, n, eps)
    arg = wq + nu(b, m, eps) + d
    return (n * (1 - hhat(arg)) - f * n * hhat(wq + d) - mp.log(1 / eps, 2)) / N


def trace_norm_pure_difference(overlap_sq):
    """``|| (|u><u| - |v><v|) / 2 ||_1`` for unit vectors with ``|<u|v>|^2 = overlap_sq``."""
    return mp.sqrt(1 - mp.mpf(overlap_sq))
