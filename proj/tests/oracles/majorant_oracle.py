"""Independent reference values for the frozen oracle tests.

Everything here is computed from the defining formulas with Python's
Fraction (pairwise products, subset sums) or mpmath at 80 digits, sharing
no code with the C++ library. Run:  python3 tests/oracles/majorant_oracle.py
"""
from fractions import Fraction as F
from itertools import combinations
from math import prod

import mpmath

mpmath.mp.dps = 80


def weights(dim, c, ceil_base=False):
    r = F(dim) / c
    if ceil_base:
        r = F(-((-r.numerator) // r.denominator))
    return r, [r ** (dim - i) for i in range(1, dim + 1)]


def majorants(a):
    n = len(a)
    hat = plain = F(1)
    for i in range(n):
        for j in range(i + 1, n):
            q = a[i] / a[j]
            hat *= (q - 1) / (q - 2)
            plain *= (q - 1) / (q - 2)
            if i >= 1:
                step = a[i] / a[i - 1]
                hat *= (q - 2) / (q - 2 - step)
                plain *= (q - 2) / (q - 2 + step)
    return hat, plain


def elem_sym(a, p):
    return sum((prod(F(1) / x for x in s) for s in combinations(a, p)), F(0))


def tilde(a, p):
    n = len(a)
    s = 2 * n * sum((i + 1) * x for i, x in enumerate(a))
    return s ** p * elem_sym(a, p)


def float_chat(dim, c):
    r = mpmath.mpf(dim) / c
    out = mpmath.mpf(1)
    for k in range(1, dim):
        rk = r ** k
        out *= (rk - 1) ** (dim - k) / ((rk - 2) * (rk - 2 - 1 / r) ** (dim - 1 - k))
    return out


def float_cplain(dim, c):
    r = mpmath.mpf(dim) / c
    out = mpmath.mpf(1)
    for k in range(1, dim):
        rk = r ** k
        out *= (rk - 1) ** (dim - k) / ((rk - 2) * (rk - 2 + 1 / r) ** (dim - 1 - k))
    return out


def main():
    for dim in (8, 9, 10):
        _, a = weights(dim, 3)
        hat, plain = majorants(a)
        print(f"rational c=3 dim={dim} c_hat={hat} c_plain={plain}")
        print(f"  c_minus_ub={(hat - plain) / 2}")
    _, a = weights(10, 3, ceil_base=True)
    hat, plain = majorants(a)
    print(f"ceil c=3 dim=10 c_hat={hat} c_plain={plain}")
    _, a = weights(9, 3)
    for p in (1, 2, 3, 9):
        print(f"dim=9 e_{p}={elem_sym(a, p)} T_{p}={tilde(a, p)}")
    _, a = weights(6, F(7, 2))
    print(f"dim=6 c=7/2 e_3={elem_sym(a, 3)}")

    e3 = mpmath.e ** 3
    h200, h400 = float_chat(200, 3), float_chat(400, 3)
    print(f"c_hat(200)={mpmath.nstr(h200, 20)} c_hat(400)={mpmath.nstr(h400, 20)}")
    print(f"richardson={mpmath.nstr(2 * h400 - h200, 20)} e3={mpmath.nstr(e3, 20)}")
    for dim in (200, 400):
        h, c = float_chat(dim, 3), float_cplain(dim, 3)
        print(f"dim={dim} n_log_ratio={mpmath.nstr(dim * mpmath.log(h / c), 20)}"
              f" n_c_minus={mpmath.nstr(dim * (h - c) / 2, 20)}"
              f" rho0={mpmath.nstr(mpmath.mpf(17) / 2 - (h - c) / 2, 20)}")


if __name__ == "__main__":
    main()
